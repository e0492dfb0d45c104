#pragma once

// Joint densities f(a, b) of the random cubic coefficients.

#include <optional>
#include <string>
#include <variant>

#include "rcubic/cubic.hpp"
#include "rcubic/random.hpp"

namespace rcubic {

struct Normal {
  double mu;
  double sigma;
};

struct Uniform {
  double lo;
  double hi;
};

using Marginal = std::variant<Normal, Uniform>;

struct GaussianDiagonal {
  double mean_a;
  double mean_b;
  double sigma_a;
  double sigma_b;
};

struct UniformRect {
  double a_min;
  double a_max;
  double b_min;
  double b_max;
};

/// Independent coefficients with the given marginals.
struct ProductOfMarginals {
  Marginal a;
  Marginal b;
};

using DensityFamily = std::variant<GaussianDiagonal, UniformRect, ProductOfMarginals>;

/// A validated coefficient density. Construction throws ValidationError
/// naming the offending parameter (sigma_a, a_min, ...).
class DensitySpec {
 public:
  DensitySpec(DensityFamily family);  // NOLINT(google-explicit-constructor)

  const DensityFamily& family() const noexcept { return family_; }

  /// The density as independent marginals of a and b.
  const Marginal& marginal_a() const noexcept { return marginal_a_; }
  const Marginal& marginal_b() const noexcept { return marginal_b_; }

 private:
  DensityFamily family_;
  Marginal marginal_a_;
  Marginal marginal_b_;
};

struct Interval {
  double lo;
  double hi;

  double width() const noexcept { return hi - lo; }
  bool contains(double v) const noexcept { return lo <= v && v <= hi; }
};

/// Per-axis support; nullopt means unbounded.
struct SupportBounds {
  std::optional<Interval> a_range;
  std::optional<Interval> b_range;
};

double pdf(const DensitySpec& spec, double a, double b) noexcept;

double marginal_pdf(const Marginal& m, double v) noexcept;

/// Draws one coefficient pair; a is drawn before b.
Coefficients sample(const DensitySpec& spec, RandomStream& stream);

SupportBounds support_bounds(const DensitySpec& spec) noexcept;

/// Short family tag used in reports: gaussian_diagonal, uniform_rect, product.
std::string family_name(const DensitySpec& spec);

}  // namespace rcubic
