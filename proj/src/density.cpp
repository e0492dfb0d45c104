#include "rcubic/density.hpp"

#include <cmath>
#include <numbers>

#include "rcubic/errors.hpp"

namespace rcubic {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require_finite(double v, const std::string& field) {
  if (!std::isfinite(v)) throw ValidationError(field, "must be finite");
}

void validate_normal(const Normal& n, const std::string& mu_field,
                     const std::string& sigma_field) {
  require_finite(n.mu, mu_field);
  require_finite(n.sigma, sigma_field);
  if (!(n.sigma > 0.0)) throw ValidationError(sigma_field, "must be > 0");
}

void validate_uniform(const Uniform& u, const std::string& lo_field,
                      const std::string& hi_field) {
  require_finite(u.lo, lo_field);
  require_finite(u.hi, hi_field);
  if (!(u.lo < u.hi)) {
    throw ValidationError(hi_field, "must be greater than " + lo_field);
  }
}

void validate_marginal(const Marginal& m, char axis) {
  const std::string suffix = std::string("_") + axis;
  std::visit(Overloaded{
                 [&](const Normal& n) { validate_normal(n, "mu" + suffix, "sigma" + suffix); },
                 [&](const Uniform& u) { validate_uniform(u, "lo" + suffix, "hi" + suffix); },
             },
             m);
}

Marginal as_marginal_a(const DensityFamily& f) {
  return std::visit(
      Overloaded{
          [](const GaussianDiagonal& g) -> Marginal { return Normal{g.mean_a, g.sigma_a}; },
          [](const UniformRect& u) -> Marginal { return Uniform{u.a_min, u.a_max}; },
          [](const ProductOfMarginals& p) { return p.a; },
      },
      f);
}

Marginal as_marginal_b(const DensityFamily& f) {
  return std::visit(
      Overloaded{
          [](const GaussianDiagonal& g) -> Marginal { return Normal{g.mean_b, g.sigma_b}; },
          [](const UniformRect& u) -> Marginal { return Uniform{u.b_min, u.b_max}; },
          [](const ProductOfMarginals& p) { return p.b; },
      },
      f);
}

double sample_marginal(const Marginal& m, RandomStream& stream) {
  if (const auto* n = std::get_if<Normal>(&m)) {
    return n->mu + n->sigma * stream.normal();
  }
  const auto& u = std::get<Uniform>(m);
  return u.lo + (u.hi - u.lo) * stream.uniform();
}

std::optional<Interval> marginal_support(const Marginal& m) {
  if (const auto* u = std::get_if<Uniform>(&m)) return Interval{u->lo, u->hi};
  return std::nullopt;
}

}  // namespace

DensitySpec::DensitySpec(DensityFamily family)
    : family_(std::move(family)),
      marginal_a_(as_marginal_a(family_)),
      marginal_b_(as_marginal_b(family_)) {
  std::visit(Overloaded{
                 [](const GaussianDiagonal& g) {
                   validate_normal({g.mean_a, g.sigma_a}, "mean_a", "sigma_a");
                   validate_normal({g.mean_b, g.sigma_b}, "mean_b", "sigma_b");
                 },
                 [](const UniformRect& u) {
                   validate_uniform({u.a_min, u.a_max}, "a_min", "a_max");
                   validate_uniform({u.b_min, u.b_max}, "b_min", "b_max");
                 },
                 [](const ProductOfMarginals& p) {
                   validate_marginal(p.a, 'a');
                   validate_marginal(p.b, 'b');
                 },
             },
             family_);
}

double marginal_pdf(const Marginal& m, double v) noexcept {
  if (const auto* n = std::get_if<Normal>(&m)) {
    const double z = (v - n->mu) / n->sigma;
    return std::exp(-0.5 * z * z) * std::numbers::inv_sqrtpi /
           (std::numbers::sqrt2 * n->sigma);
  }
  const auto& u = std::get<Uniform>(m);
  return (u.lo <= v && v <= u.hi) ? 1.0 / (u.hi - u.lo) : 0.0;
}

double pdf(const DensitySpec& spec, double a, double b) noexcept {
  const double fa = marginal_pdf(spec.marginal_a(), a);
  if (fa == 0.0) return 0.0;
  return fa * marginal_pdf(spec.marginal_b(), b);
}

Coefficients sample(const DensitySpec& spec, RandomStream& stream) {
  const double a = sample_marginal(spec.marginal_a(), stream);
  const double b = sample_marginal(spec.marginal_b(), stream);
  return {a, b};
}

SupportBounds support_bounds(const DensitySpec& spec) noexcept {
  return {marginal_support(spec.marginal_a()), marginal_support(spec.marginal_b())};
}

std::string family_name(const DensitySpec& spec) {
  return std::visit(Overloaded{
                        [](const GaussianDiagonal&) { return std::string("gaussian_diagonal"); },
                        [](const UniformRect&) { return std::string("uniform_rect"); },
                        [](const ProductOfMarginals&) { return std::string("product"); },
                    },
                    spec.family());
}

}  // namespace rcubic
