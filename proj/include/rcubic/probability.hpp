#pragma once

// P(D), P(K) and normalization integrals of the conditional densities.

#include <cstddef>
#include <cstdint>

#include "rcubic/conditional.hpp"
#include "rcubic/cubature.hpp"
#include "rcubic/density.hpp"

namespace rcubic {

/// Half-width of the Gaussian truncation box, in standard deviations.
inline constexpr double kGaussianTruncationSigmas = 8.0;

/// Finite box in coefficient space outside of which the density has mass
/// at most `mass_deficit`. Uniform axes use their support; normal axes are
/// cut at +-8 sigma. Throws TruncationFailure if that leaves more than the
/// allowed mass outside.
Rect coefficient_box(const DensitySpec& spec, double mass_deficit);

/// Probability mass the density puts outside coefficient_box.
double coefficient_box_deficit(const DensitySpec& spec) noexcept;

/// Bound on the magnitude of every root of z^3 + az + b over the box:
/// 2 max(sqrt|a|, |b|^(1/3)).
double root_magnitude_bound(const Rect& coefficient_box) noexcept;

/// Rectangle in R* space containing the event's region for all
/// coefficients of the box.
Rect rstar_box(Event event, const Rect& coefficient_box) noexcept;

/// Event frequencies over n samples; samples classified S are left out of
/// the denominator. Throws DegenerateDensity when no D or K sample occurs.
/// Requires n >= 1000.
EventProbabilities estimate_mc(const DensitySpec& spec, std::size_t n, std::uint64_t seed);

/// P(K) and P(D) by adaptive cubature over the truncation box, with the
/// discriminant boundary b = +-2(-a/3)^(3/2) resolved exactly inside every
/// cell. Standard errors are reported as max(abs_tol, estimated error).
EventProbabilities estimate_quadrature(const DensitySpec& spec, double abs_tol,
                                       Execution execution = Execution::Parallel);

/// Integral of density_event over the event's region. Expected value 1.
double normalization_integral(Event event, const DensitySpec& spec,
                              const EventProbabilities& probs, double abs_tol,
                              Execution execution = Execution::Parallel);

/// Integral of density_event over one rectangle of R* space.
CubatureResult integrate_density(Event event, const DensitySpec& spec,
                                 const EventProbabilities& probs, const Rect& rect,
                                 double abs_tol, const CubatureOptions& options);

namespace serial {

/// Reference loop for estimate_mc.
EventProbabilities estimate_mc(const DensitySpec& spec, std::size_t n, std::uint64_t seed);

}  // namespace serial

}  // namespace rcubic
