#include "rcubic/verification.hpp"

#include <algorithm>
#include <cmath>

#include "rcubic/errors.hpp"
#include "rcubic/probability.hpp"
#include "rcubic/sampling.hpp"

namespace rcubic {

namespace {

RStarRecord make_record(const Coefficients& c) {
  const RootClass cls = classify(c);
  if (cls == RootClass::S) return {c, cls, std::nullopt};
  return {c, cls, r_star(solve(c))};
}

void simulate_block(const DensitySpec& spec, std::size_t n, std::uint64_t seed,
                    std::size_t block, std::vector<RStarRecord>& out) {
  const SampleBlock range = sample_block(n, block);
  RandomStream stream(seed, range.substream);
  for (std::size_t i = range.begin; i < range.end; ++i) out[i] = make_record(sample(spec, stream));
}

void check_edges(std::span<const double> edges, const char* axis) {
  if (edges.size() < 2) {
    throw InvalidArgument(std::string(axis) + " edges need at least two values");
  }
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) {
      throw InvalidArgument(std::string(axis) + " edges must be strictly increasing");
    }
  }
}

/// Bin index of v, or npos when outside [front, back].
std::size_t bin_of(std::span<const double> edges, double v) {
  if (!(v >= edges.front() && v <= edges.back())) return static_cast<std::size_t>(-1);
  const auto it = std::upper_bound(edges.begin(), edges.end(), v);
  const auto idx = static_cast<std::size_t>(it - edges.begin());
  return std::min(idx, edges.size() - 1) - 1;
}

Histogram2D empty_histogram(std::span<const double> x_edges, std::span<const double> y_edges) {
  check_edges(x_edges, "x");
  check_edges(y_edges, "y");
  Histogram2D h;
  h.x_edges.assign(x_edges.begin(), x_edges.end());
  h.y_edges.assign(y_edges.begin(), y_edges.end());
  h.counts.assign(h.nx() * h.ny(), 0);
  return h;
}

void accumulate(Histogram2D& h, std::span<const RStarRecord> records, RootClass wanted) {
  for (const auto& r : records) {
    ++h.n_total;
    if (r.root_class == RootClass::S) {
      ++h.n_discarded_S;
      continue;
    }
    if (r.root_class != wanted) continue;
    const std::size_t i = bin_of(h.x_edges, r.rstar->r1);
    const std::size_t j = bin_of(h.y_edges, r.rstar->r2);
    if (i == static_cast<std::size_t>(-1) || j == static_cast<std::size_t>(-1)) {
      ++h.n_out_of_range;
    } else {
      ++h.counts[j * h.nx() + i];
    }
  }
}

void merge(Histogram2D& into, const Histogram2D& part) {
  for (std::size_t k = 0; k < into.counts.size(); ++k) into.counts[k] += part.counts[k];
  into.n_total += part.n_total;
  into.n_discarded_S += part.n_discarded_S;
  into.n_out_of_range += part.n_out_of_range;
}

Grid2D empty_grid(std::span<const double> x_edges, std::span<const double> y_edges) {
  check_edges(x_edges, "x");
  check_edges(y_edges, "y");
  Grid2D g;
  g.x_edges.assign(x_edges.begin(), x_edges.end());
  g.y_edges.assign(y_edges.begin(), y_edges.end());
  g.values.assign(g.nx() * g.ny(), 0.0);
  return g;
}

double bin_mass(Event event, const DensitySpec& spec, const EventProbabilities& probs,
                const Grid2D& g, std::size_t k, double abs_tol) {
  const std::size_t i = k % g.nx();
  const std::size_t j = k / g.nx();
  const Rect bin{g.x_edges[i], g.x_edges[i + 1], g.y_edges[j], g.y_edges[j + 1]};
  CubatureOptions options;
  options.execution = Execution::Serial;
  options.initial_splits = 1;
  options.max_cells = std::size_t{1} << 16;
  return integrate_density(event, spec, probs, bin, abs_tol, options).value;
}

}  // namespace

std::uint64_t Histogram2D::n_event() const noexcept {
  std::uint64_t total = n_out_of_range;
  for (auto c : counts) total += c;
  return total;
}

std::vector<RStarRecord> simulate_rstar_batch(const DensitySpec& spec, std::size_t n,
                                              std::uint64_t seed) {
  std::vector<RStarRecord> out(n);
  const auto blocks = static_cast<long long>(block_count(n));
#pragma omp parallel for schedule(dynamic, 1)
  for (long long k = 0; k < blocks; ++k) {
    simulate_block(spec, n, seed, static_cast<std::size_t>(k), out);
  }
  return out;
}

Histogram2D conditional_histogram(std::span<const RStarRecord> batch, Event event,
                                  std::span<const double> x_edges,
                                  std::span<const double> y_edges) {
  Histogram2D total = empty_histogram(x_edges, y_edges);
  const std::size_t blocks = block_count(batch.size());
  std::vector<Histogram2D> parts(blocks, total);
  const auto count = static_cast<long long>(blocks);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long k = 0; k < count; ++k) {
    const SampleBlock range = sample_block(batch.size(), static_cast<std::size_t>(k));
    accumulate(parts[static_cast<std::size_t>(k)],
               batch.subspan(range.begin, range.end - range.begin), to_root_class(event));
  }
  for (const auto& p : parts) merge(total, p);
  return total;
}

Grid2D analytic_bin_masses(Event event, const DensitySpec& spec,
                           const EventProbabilities& probs,
                           std::span<const double> x_edges, std::span<const double> y_edges,
                           double abs_tol) {
  probs.of(event);
  Grid2D g = empty_grid(x_edges, y_edges);
  const auto bins = static_cast<long long>(g.values.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long k = 0; k < bins; ++k) {
    g.values[static_cast<std::size_t>(k)] =
        bin_mass(event, spec, probs, g, static_cast<std::size_t>(k), abs_tol);
  }
  return g;
}

ComparisonReport compare(const Histogram2D& hist, const Grid2D& masses) {
  if (hist.x_edges.size() != masses.x_edges.size() ||
      hist.y_edges.size() != masses.y_edges.size() ||
      hist.counts.size() != masses.values.size()) {
    throw ShapeMismatch("histogram and mass grid have different shapes");
  }
  ComparisonReport report;
  report.nx = hist.nx();
  report.ny = hist.ny();
  report.per_bin_z.assign(hist.counts.size(), std::nan(""));
  const double n = static_cast<double>(hist.n_event());

  std::size_t within = 0;
  auto score = [&](double observed, double mass) {
    const double expected = n * mass;
    const double var = expected * (1.0 - mass);
    const double z = var > 0.0 ? (observed - expected) / std::sqrt(var)
                               : (observed == expected ? 0.0 : INFINITY);
    report.chi_square += (observed - expected) * (observed - expected) / expected;
    ++report.dof;
    report.max_abs_z = std::max(report.max_abs_z, std::abs(z));
    if (std::abs(z) <= kBinSigma) ++within;
    return z;
  };

  double pooled_count = 0.0;
  double pooled_mass = 0.0;
  for (std::size_t k = 0; k < hist.counts.size(); ++k) {
    const double mass = std::max(masses.values[k], 0.0);
    const auto observed = static_cast<double>(hist.counts[k]);
    if (n * mass >= kMinExpectedCount) {
      report.per_bin_z[k] = score(observed, mass);
      ++report.retained_bins;
    } else {
      pooled_count += observed;
      pooled_mass += mass;
      ++report.pooled_bins;
    }
  }
  if (n * pooled_mass >= kMinExpectedCount) {
    report.pooled_z = score(pooled_count, pooled_mass);
  }
  const std::size_t scored = report.dof;
  report.frac_bins_within_4sigma =
      scored > 0 ? static_cast<double>(within) / static_cast<double>(scored) : 0.0;
  report.passed = scored > 0 && report.frac_bins_within_4sigma >= kMinFractionWithin &&
                  report.max_abs_z <= kMaxAbsZ;
  return report;
}

double coefficient_rel_error(const Coefficients& expected, const Coefficients& actual) noexcept {
  const double scale = std::max({1.0, std::abs(expected.a()), std::abs(expected.b())});
  return std::max(std::abs(actual.a() - expected.a()), std::abs(actual.b() - expected.b())) /
         scale;
}

RoundtripSummary roundtrip_suite(const DensitySpec& spec, std::size_t n, std::uint64_t seed) {
  const std::vector<RStarRecord> batch = simulate_rstar_batch(spec, n, seed);
  RoundtripSummary s;
  for (const auto& r : batch) {
    switch (r.root_class) {
      case RootClass::S:
        ++s.n_S;
        break;
      case RootClass::D:
        ++s.n_D;
        s.max_rel_err_D = std::max(
            s.max_rel_err_D,
            coefficient_rel_error(r.coeffs, coeffs_from_rstar_D(r.rstar->r1, r.rstar->r2)));
        break;
      case RootClass::K: {
        ++s.n_K;
        s.max_rel_err_K = std::max(
            s.max_rel_err_K, coefficient_rel_error(r.coeffs, g_inverse(r.rstar->r1, r.rstar->r2)));
        const auto roots = std::get<ThreeReal>(solve(r.coeffs));
        const Coefficients vieta(roots.r1 * roots.r2 + roots.r1 * roots.r3 + roots.r2 * roots.r3,
                                 -roots.r1 * roots.r2 * roots.r3);
        s.max_rel_err_vieta = std::max(s.max_rel_err_vieta, coefficient_rel_error(r.coeffs, vieta));
        break;
      }
    }
  }
  s.passed = s.max_rel_err_D <= kRoundtripTolerance && s.max_rel_err_K <= kRoundtripTolerance &&
             s.max_rel_err_vieta <= kRoundtripTolerance;
  return s;
}

std::vector<double> linear_edges(double lo, double hi, std::size_t bins) {
  if (bins == 0 || !(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidArgument("grid range must be finite and non-empty with at least one bin");
  }
  std::vector<double> edges(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  }
  edges.back() = hi;
  return edges;
}

double empirical_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidArgument("quantile of an empty sample");
  const auto rank = static_cast<std::size_t>(std::floor(q * static_cast<double>(values.size() - 1)));
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(rank), values.end());
  return values[rank];
}

GridRanges choose_grid(std::span<const RStarRecord> batch, Event event) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& r : batch) {
    if (r.root_class != to_root_class(event)) continue;
    xs.push_back(r.rstar->r1);
    ys.push_back(r.rstar->r2);
  }
  if (xs.size() < 2) {
    throw DegenerateDensity("too few simulated records of the event to place a grid");
  }
  if (event == Event::D) {
    return {{empirical_quantile(xs, 0.0025), empirical_quantile(xs, 0.9975)},
            {0.0, empirical_quantile(ys, 0.995)}};
  }
  const auto [x_lo, x_hi] = std::minmax_element(xs.begin(), xs.end());
  const auto [y_lo, y_hi] = std::minmax_element(ys.begin(), ys.end());
  return {{*x_lo, *x_hi}, {*y_lo, *y_hi}};
}

VerificationResult verify(const DensitySpec& spec, Event event, std::size_t n,
                          std::uint64_t seed, const VerificationOptions& options) {
  VerificationResult out{estimate_quadrature(spec, options.quad_tol), {}, {}, {}};
  const std::vector<RStarRecord> batch = simulate_rstar_batch(spec, n, seed);
  const GridRanges ranges = options.ranges ? *options.ranges : choose_grid(batch, event);
  const auto xe = linear_edges(ranges.x.lo, ranges.x.hi, options.nx);
  const auto ye = linear_edges(ranges.y.lo, ranges.y.hi, options.ny);
  out.histogram = conditional_histogram(batch, event, xe, ye);
  out.masses = analytic_bin_masses(event, spec, out.probs, xe, ye, options.quad_tol);
  out.report = compare(out.histogram, out.masses);
  return out;
}

namespace serial {

std::vector<RStarRecord> simulate_rstar_batch(const DensitySpec& spec, std::size_t n,
                                              std::uint64_t seed) {
  std::vector<RStarRecord> out(n);
  for (std::size_t k = 0; k < block_count(n); ++k) simulate_block(spec, n, seed, k, out);
  return out;
}

Histogram2D conditional_histogram(std::span<const RStarRecord> batch, Event event,
                                  std::span<const double> x_edges,
                                  std::span<const double> y_edges) {
  Histogram2D h = empty_histogram(x_edges, y_edges);
  accumulate(h, batch, to_root_class(event));
  return h;
}

Grid2D analytic_bin_masses(Event event, const DensitySpec& spec,
                           const EventProbabilities& probs,
                           std::span<const double> x_edges, std::span<const double> y_edges,
                           double abs_tol) {
  probs.of(event);
  Grid2D g = empty_grid(x_edges, y_edges);
  for (std::size_t k = 0; k < g.values.size(); ++k) {
    g.values[k] = bin_mass(event, spec, probs, g, k, abs_tol);
  }
  return g;
}

}  // namespace serial

}  // namespace rcubic
