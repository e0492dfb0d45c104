#pragma once

// Monte Carlo oracle for the closed-form conditional densities: simulate R*,
// histogram it per event, and compare against analytic bin masses.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rcubic/conditional.hpp"
#include "rcubic/cubature.hpp"
#include "rcubic/cubic.hpp"
#include "rcubic/density.hpp"

namespace rcubic {

struct RStarRecord {
  Coefficients coeffs;
  RootClass root_class = RootClass::S;
  std::optional<RStar> rstar;  ///< empty on the event S
};

/// Row-major grid over bins: value(i, j) is bin i along x and j along y.
struct Grid2D {
  std::vector<double> x_edges;
  std::vector<double> y_edges;
  std::vector<double> values;

  std::size_t nx() const noexcept { return x_edges.size() - 1; }
  std::size_t ny() const noexcept { return y_edges.size() - 1; }
  double& at(std::size_t i, std::size_t j) { return values[j * nx() + i]; }
  double at(std::size_t i, std::size_t j) const { return values[j * nx() + i]; }
};

struct Histogram2D {
  std::vector<double> x_edges;
  std::vector<double> y_edges;
  std::vector<std::uint64_t> counts;  ///< row-major, as in Grid2D
  std::uint64_t n_total = 0;          ///< records seen, all classes
  std::uint64_t n_discarded_S = 0;
  std::uint64_t n_out_of_range = 0;   ///< event records outside the grid

  std::size_t nx() const noexcept { return x_edges.size() - 1; }
  std::size_t ny() const noexcept { return y_edges.size() - 1; }
  std::uint64_t at(std::size_t i, std::size_t j) const { return counts[j * nx() + i]; }
  /// Records of the conditioning event, in range or not.
  std::uint64_t n_event() const noexcept;
};

struct ComparisonReport {
  std::vector<double> per_bin_z;  ///< NaN for bins pooled as sparse
  std::size_t nx = 0;
  std::size_t ny = 0;
  double chi_square = 0.0;
  std::size_t dof = 0;
  double max_abs_z = 0.0;
  double frac_bins_within_4sigma = 0.0;
  std::size_t retained_bins = 0;
  std::size_t pooled_bins = 0;
  std::optional<double> pooled_z;  ///< present when the pooled bin is retained
  bool passed = false;
};

/// Thresholds of the comparison rule.
inline constexpr double kMinExpectedCount = 5.0;
inline constexpr double kBinSigma = 4.0;
inline constexpr double kMinFractionWithin = 0.99;
inline constexpr double kMaxAbsZ = 6.0;

/// n independent coefficient samples with their class and R*.
std::vector<RStarRecord> simulate_rstar_batch(const DensitySpec& spec, std::size_t n,
                                              std::uint64_t seed);

/// Bins the records of one event. Bins are half-open [lo, hi) except the
/// last along each axis, which is closed.
Histogram2D conditional_histogram(std::span<const RStarRecord> batch, Event event,
                                  std::span<const double> x_edges,
                                  std::span<const double> y_edges);

/// Integral of density_event over each bin, each within abs_tol.
Grid2D analytic_bin_masses(Event event, const DensitySpec& spec,
                           const EventProbabilities& probs,
                           std::span<const double> x_edges, std::span<const double> y_edges,
                           double abs_tol);

/// Binomial z-scores per bin with expected count >= 5; sparser bins are
/// pooled into one. Passes when at least 99% of retained bins have |z| <= 4
/// and none exceeds 6. Throws ShapeMismatch when the grids differ.
ComparisonReport compare(const Histogram2D& hist, const Grid2D& masses);

struct RoundtripSummary {
  std::size_t n_D = 0;
  std::size_t n_K = 0;
  std::size_t n_S = 0;
  double max_rel_err_D = 0.0;      ///< coeffs_from_rstar_D(r_star(c)) vs c
  double max_rel_err_K = 0.0;      ///< g_inverse(r_star(c)) vs c
  double max_rel_err_vieta = 0.0;  ///< symmetric functions of the three real roots vs c
  bool passed = false;             ///< every error <= kRoundtripTolerance
};

inline constexpr double kRoundtripTolerance = 1e-8;

/// max(|a' - a|, |b' - b|) / max(1, |a|, |b|).
double coefficient_rel_error(const Coefficients& expected, const Coefficients& actual) noexcept;

RoundtripSummary roundtrip_suite(const DensitySpec& spec, std::size_t n, std::uint64_t seed);

/// Equally spaced edges from lo to hi.
std::vector<double> linear_edges(double lo, double hi, std::size_t bins);

/// Value at rank floor(q (n - 1)) of the sorted input.
double empirical_quantile(std::vector<double> values, double q);

struct GridRanges {
  Interval x;
  Interval y;
};

/// Viewing window for an event's histogram, from the simulated records.
///   D: x between the 0.25% and 99.75% quantiles of r1, y in (0, 99.5% quantile of r2]
///   K: bounding box of the simulated (r1, r2)
/// Throws DegenerateDensity when the batch holds fewer than two event records.
GridRanges choose_grid(std::span<const RStarRecord> batch, Event event);

struct VerificationOptions {
  std::size_t nx = 40;
  std::size_t ny = 40;
  double quad_tol = 1e-7;
  std::optional<GridRanges> ranges;  ///< overrides choose_grid
};

struct VerificationResult {
  EventProbabilities probs;
  Histogram2D histogram;
  Grid2D masses;
  ComparisonReport report;
};

/// Full pipeline: quadrature probabilities, simulation, histogram, analytic
/// masses and comparison.
VerificationResult verify(const DensitySpec& spec, Event event, std::size_t n,
                          std::uint64_t seed, const VerificationOptions& options = {});

namespace serial {

/// Reference loops for the parallel kernels above; same substreams and
/// the same results bit for bit.
std::vector<RStarRecord> simulate_rstar_batch(const DensitySpec& spec, std::size_t n,
                                              std::uint64_t seed);
Histogram2D conditional_histogram(std::span<const RStarRecord> batch, Event event,
                                  std::span<const double> x_edges,
                                  std::span<const double> y_edges);
Grid2D analytic_bin_masses(Event event, const DensitySpec& spec,
                           const EventProbabilities& probs,
                           std::span<const double> x_edges, std::span<const double> y_edges,
                           double abs_tol);

}  // namespace serial

}  // namespace rcubic
