#include "rcubic/probability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "rcubic/errors.hpp"
#include "rcubic/sampling.hpp"

namespace rcubic {

namespace {

Interval axis_box(const Marginal& m) {
  if (const auto* n = std::get_if<Normal>(&m)) {
    return {n->mu - kGaussianTruncationSigmas * n->sigma,
            n->mu + kGaussianTruncationSigmas * n->sigma};
  }
  const auto& u = std::get<Uniform>(m);
  return {u.lo, u.hi};
}

double axis_deficit(const Marginal& m) noexcept {
  if (std::holds_alternative<Normal>(m)) {
    return std::erfc(kGaussianTruncationSigmas / std::numbers::sqrt2);
  }
  return 0.0;
}

struct ClassCounts {
  std::size_t d = 0;
  std::size_t k = 0;
  std::size_t s = 0;
};

ClassCounts count_block(const DensitySpec& spec, std::size_t n, std::uint64_t seed,
                        std::size_t block) {
  const SampleBlock range = sample_block(n, block);
  RandomStream stream(seed, range.substream);
  ClassCounts counts;
  for (std::size_t i = range.begin; i < range.end; ++i) {
    switch (classify(sample(spec, stream))) {
      case RootClass::D: ++counts.d; break;
      case RootClass::K: ++counts.k; break;
      case RootClass::S: ++counts.s; break;
    }
  }
  return counts;
}

EventProbabilities from_counts(const ClassCounts& c) {
  const double valid = static_cast<double>(c.d + c.k);
  if (valid == 0.0) {
    throw DegenerateDensity("every sample fell on the repeated-root event S");
  }
  const double pD = static_cast<double>(c.d) / valid;
  const double pK = static_cast<double>(c.k) / valid;
  return {pD, pK, std::sqrt(pD * (1.0 - pD) / valid), std::sqrt(pK * (1.0 - pK) / valid),
          ProbabilityMethod::MonteCarlo};
}

void require_sample_size(std::size_t n) {
  if (n < 1000) throw InvalidArgument("Monte Carlo estimate needs at least 1000 samples");
}

// Half-width of the K slice {b : b^2/4 + a^3/27 < 0} at a given a.
double k_half_width(double a) noexcept {
  return a < 0.0 ? 2.0 * std::pow(-a / 3.0, 1.5) : 0.0;
}

CubatureResult event_mass(Event event, const DensitySpec& spec, const Rect& box,
                          double abs_tol, Execution execution) {
  const RootClass wanted = to_root_class(event);
  auto integrand = [&](double a, double b) {
    const double delta = b * b / 4.0 + a * a * a / 27.0;
    const RootClass c = delta > 0.0 ? RootClass::D : (delta < 0.0 ? RootClass::K : RootClass::S);
    return c == wanted ? pdf(spec, a, b) : 0.0;
  };
  auto breaks = [](double a, double lo, double hi) {
    std::vector<double> cuts;
    const double w = k_half_width(a);
    if (w > 0.0) {
      if (lo < -w && -w < hi) cuts.push_back(-w);
      if (lo < w && w < hi) cuts.push_back(w);
    }
    return cuts;
  };
  // The slice edges +-w(a) start at the cusp a = 0, where the slice mass
  // behaves like (-a)^(3/2), and cross a horizontal cell edge b = e where
  // w(a) = |e|.
  auto x_cuts = [](const Rect& r) {
    std::vector<XCut> cuts;
    for (double e : {std::abs(r.y0), std::abs(r.y1)}) {
      const double a = -3.0 * std::pow(e / 2.0, 2.0 / 3.0);
      if (e > 0.0 && r.x0 < a && a < r.x1) cuts.push_back({a, false});
    }
    if (r.x0 <= 0.0 && 0.0 <= r.x1) cuts.push_back({0.0, true});
    std::sort(cuts.begin(), cuts.end(), [](const XCut& l, const XCut& r) { return l.at < r.at; });
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](const XCut& l, const XCut& r) { return l.at == r.at; }),
               cuts.end());
    return cuts;
  };
  CubatureOptions options;
  options.execution = execution;
  options.initial_splits = 8;
  return adaptive_cubature(
      [&](const Rect& r) { return iterated_gauss(r, integrand, breaks, x_cuts(r)); }, box,
      abs_tol, options);
}

}  // namespace

double coefficient_box_deficit(const DensitySpec& spec) noexcept {
  const double da = axis_deficit(spec.marginal_a());
  const double db = axis_deficit(spec.marginal_b());
  return da + db - da * db;
}

Rect coefficient_box(const DensitySpec& spec, double mass_deficit) {
  const double deficit = coefficient_box_deficit(spec);
  if (deficit > mass_deficit) {
    throw TruncationFailure("the +-8 sigma box leaves " + std::to_string(deficit) +
                            " of the mass outside, more than the allowed " +
                            std::to_string(mass_deficit));
  }
  const Interval a = axis_box(spec.marginal_a());
  const Interval b = axis_box(spec.marginal_b());
  return {a.lo, a.hi, b.lo, b.hi};
}

double root_magnitude_bound(const Rect& box) noexcept {
  const double a = std::max(std::abs(box.x0), std::abs(box.x1));
  const double b = std::max(std::abs(box.y0), std::abs(box.y1));
  return 2.0 * std::max(std::sqrt(a), std::cbrt(b));
}

Rect rstar_box(Event event, const Rect& coefficient_box) noexcept {
  const double r = root_magnitude_bound(coefficient_box);
  if (event == Event::D) return {-r, r, 0.0, r};
  return {0.0, r, -r / 2.0, r};
}

EventProbabilities estimate_mc(const DensitySpec& spec, std::size_t n, std::uint64_t seed) {
  require_sample_size(n);
  const std::size_t blocks = block_count(n);
  std::vector<ClassCounts> partial(blocks);
  const auto count = static_cast<long long>(blocks);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long k = 0; k < count; ++k) {
    partial[static_cast<std::size_t>(k)] = count_block(spec, n, seed, static_cast<std::size_t>(k));
  }
  ClassCounts total;
  for (const auto& c : partial) {
    total.d += c.d;
    total.k += c.k;
    total.s += c.s;
  }
  return from_counts(total);
}

EventProbabilities estimate_quadrature(const DensitySpec& spec, double abs_tol,
                                       Execution execution) {
  if (!(abs_tol > 0.0)) throw InvalidArgument("abs_tol must be > 0");
  const Rect box = coefficient_box(spec, abs_tol / 10.0);
  const CubatureResult k = event_mass(Event::K, spec, box, abs_tol / 2.0, execution);
  const CubatureResult d = event_mass(Event::D, spec, box, abs_tol / 2.0, execution);
  return {d.value, k.value, std::max(abs_tol, d.error), std::max(abs_tol, k.error),
          ProbabilityMethod::Quadrature};
}

CubatureResult integrate_density(Event event, const DensitySpec& spec,
                                 const EventProbabilities& probs, const Rect& rect,
                                 double abs_tol, const CubatureOptions& options) {
  probs.of(event);
  const SupportBounds support = support_bounds(spec);
  auto integrand = [&](double x, double y) { return density_event(event, x, y, spec, probs); };
  auto breaks = [&](double x, double lo, double hi) {
    return density_breakpoints(event, x, lo, hi, support);
  };
  return adaptive_cubature(
      [&](const Rect& r) {
        const std::vector<XCut> x_cuts = density_x_breakpoints(event, r, support);
        return iterated_gauss(r, integrand, breaks, x_cuts);
      },
      rect, abs_tol, options);
}

double normalization_integral(Event event, const DensitySpec& spec,
                              const EventProbabilities& probs, double abs_tol,
                              Execution execution) {
  if (!(abs_tol > 0.0)) throw InvalidArgument("abs_tol must be > 0");
  const Rect box = coefficient_box(spec, abs_tol / 10.0);
  CubatureOptions options;
  options.execution = execution;
  options.initial_splits = 8;
  return integrate_density(event, spec, probs, rstar_box(event, box), abs_tol, options).value;
}

namespace serial {

EventProbabilities estimate_mc(const DensitySpec& spec, std::size_t n, std::uint64_t seed) {
  require_sample_size(n);
  ClassCounts total;
  for (std::size_t k = 0; k < block_count(n); ++k) {
    const ClassCounts c = count_block(spec, n, seed, k);
    total.d += c.d;
    total.k += c.k;
    total.s += c.s;
  }
  return from_counts(total);
}

}  // namespace serial

}  // namespace rcubic
