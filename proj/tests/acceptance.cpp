// Acceptance suite: one PASS/FAIL line per criterion, each with its
// measurement, tolerance and wall time against its runtime budget.
// Exit status is the number of failed criteria (0 when all pass).

#include <omp.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rcubic/cli.hpp"
#include "rcubic/conditional.hpp"
#include "rcubic/cubic.hpp"
#include "rcubic/probability.hpp"
#include "rcubic/verification.hpp"

namespace {

using namespace rcubic;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

const DensitySpec kUniform3{UniformRect{-3.0, 3.0, -3.0, 3.0}};
const DensitySpec kStdGauss{GaussianDiagonal{0.0, 0.0, 1.0, 1.0}};

struct Outcome {
  bool ok;
  std::string detail;
};

struct Check {
  std::string id;
  std::string title;
  double budget_s;
  std::function<Outcome()> body;
};

std::string fmt(const char* format, auto... args) {
  std::string out(static_cast<std::size_t>(std::snprintf(nullptr, 0, format, args...)), '\0');
  std::snprintf(out.data(), out.size() + 1, format, args...);
  return out;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Criterion 1: P(K) = 2/15, P(D) = 13/15 for uniform [-3, 3]^2 coefficients.
Outcome probability_anchor() {
  const double pK = 2.0 / 15.0;
  const double pD = 13.0 / 15.0;
  const EventProbabilities q = estimate_quadrature(kUniform3, 1e-7);
  const EventProbabilities mc = estimate_mc(kUniform3, 1000000, 0);
  const double quad_err = std::max(std::abs(q.pK - pK), std::abs(q.pD - pD));
  const double zK = (mc.pK - pK) / mc.se_pK;
  const double zD = (mc.pD - pD) / mc.se_pD;
  const bool ok = quad_err <= 1e-3 && std::abs(zK) <= 4.0 && std::abs(zD) <= 4.0;
  return {ok, fmt("quad pK=%.12f |err|=%.2e (tol 1e-3); mc n=1e6 pK=%.6f z=%+.2f, pD z=%+.2f (tol 4)",
                  q.pK, quad_err, mc.pK, zK, zD)};
}

struct Case {
  const DensitySpec* spec;
  const char* name;
  Event event;
};

const std::vector<Case> kCases{{&kUniform3, "uniform", Event::D},
                               {&kUniform3, "uniform", Event::K},
                               {&kStdGauss, "gaussian", Event::D},
                               {&kStdGauss, "gaussian", Event::K}};

// Runs `one` for every (spec, event) case, each against its own time budget.
Outcome per_case(double budget_s, const std::function<Outcome(const Case&)>& one) {
  bool ok = true;
  std::string detail;
  for (const Case& c : kCases) {
    const auto t0 = Clock::now();
    const Outcome o = one(c);
    const double elapsed = seconds_since(t0);
    ok = ok && o.ok && elapsed <= budget_s;
    detail += fmt("%s%s [%s, %.2f s of %.0f s]", detail.empty() ? "" : " | ", o.detail.c_str(),
                  o.ok ? "ok" : "FAILED", elapsed, budget_s);
  }
  return {ok, detail};
}

// Criterion 2: conditional densities integrate to one.
Outcome normalization(const Case& c) {
  const EventProbabilities probs = estimate_quadrature(*c.spec, 1e-9);
  const double tol = c.event == Event::D ? 1e-2 : 1e-3;
  const double total = normalization_integral(c.event, *c.spec, probs, tol / 100.0);
  return {std::abs(total - 1.0) <= tol,
          fmt("%s %s: |1-I|=%.1e (tol %.0e)", c.name, to_string(c.event).data(),
              std::abs(total - 1.0), tol)};
}

// Criterion 3: simulated R* histograms agree with analytic bin masses.
Outcome verification(const Case& c) {
  const VerificationResult r = verify(*c.spec, c.event, 1000000, 0);
  const ComparisonReport& rep = r.report;
  return {rep.passed && rep.frac_bins_within_4sigma >= 0.99 && rep.max_abs_z <= 6.0,
          fmt("%s %s: %zu bins, within 4 sigma %.4f, max|z| %.2f, chi2/dof %.0f/%zu", c.name,
              to_string(c.event).data(), rep.dof, rep.frac_bins_within_4sigma, rep.max_abs_z,
              rep.chi_square, rep.dof)};
}

// Criterion 4: coefficient -> R* -> coefficient round trips and Vieta.
Outcome round_trips() {
  bool ok = true;
  std::string detail;
  for (const auto& [spec, name] : {std::pair{&kUniform3, "uniform"}, std::pair{&kStdGauss, "gaussian"}}) {
    const RoundtripSummary s = roundtrip_suite(*spec, 100000, 0);
    ok = ok && s.passed && s.n_D > 0 && s.n_K > 0;
    detail += fmt("%s: D %zu max %.1e, K %zu max %.1e, Vieta max %.1e; ", name, s.n_D,
                  s.max_rel_err_D, s.n_K, s.max_rel_err_K, s.max_rel_err_vieta);
  }
  return {ok, detail + "tol 1e-8"};
}

// Criterion 5: residuals, ordering and root sums over random cubics.
Outcome solver_quality() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  double worst_residual = 0.0;
  double worst_sum = 0.0;
  std::size_t order_violations = 0;
  std::size_t solved = 0;
  auto residual = [](const Coefficients& c, std::complex<double> z) {
    const double scale =
        std::max({1.0, std::abs(c.a()), std::abs(c.b()), std::pow(std::abs(z), 3.0)});
    return std::abs(z * z * z + c.a() * z + c.b()) / scale;
  };
  for (int i = 0; i < 100000; ++i) {
    const Coefficients c(u(rng), u(rng));
    if (classify(c) == RootClass::S) continue;
    ++solved;
    const Roots roots = solve(c);
    if (const auto* d = std::get_if<OneRealTwoComplex>(&roots)) {
      worst_residual = std::max({worst_residual, residual(c, d->real_root),
                                 residual(c, {d->re, d->im}), residual(c, {d->re, -d->im})});
      worst_sum = std::max(worst_sum, std::abs(d->real_root + 2.0 * d->re));
    } else {
      const auto& k = std::get<ThreeReal>(roots);
      worst_residual = std::max({worst_residual, residual(c, k.r1), residual(c, k.r2),
                                 residual(c, k.r3)});
      worst_sum = std::max(worst_sum, std::abs(k.r1 + k.r2 + k.r3));
      order_violations += !(k.r1 > k.r2 && k.r2 > k.r3);
    }
  }
  return {worst_residual <= 1e-9 && worst_sum <= 1e-9 && order_violations == 0 && solved > 99900,
          fmt("%zu cubics: max scaled residual=%.2e (tol 1e-9), max |root sum|=%.2e (tol 1e-9), "
              "ordering violations=%zu",
              solved, worst_residual, worst_sum, order_violations)};
}

// Criterion 6: two forms of the D density agree; the K Jacobian is negative.
Outcome formula_consistency() {
  std::mt19937_64 rng(6);
  constexpr double s3 = std::numbers::sqrt3;
  double worst_rel = 0.0;
  std::size_t not_normal = 0;
  // Each density is sampled where its value is a normal double; deep in the
  // Gaussian tail it is subnormal and carries only a few significant bits.
  struct Sampling {
    const DensitySpec* spec;
    double x_half_width;
    double y_max;
  };
  for (const Sampling& s : {Sampling{&kUniform3, 3.0, 3.0}, Sampling{&kStdGauss, 1.5, 2.5}}) {
    std::uniform_real_distribution<double> ux(-s.x_half_width, s.x_half_width);
    std::uniform_real_distribution<double> uy(0.0, s.y_max);
    const EventProbabilities probs = estimate_quadrature(*s.spec, 1e-9);
    for (int i = 0; i < 10000; ++i) {
      const double x = ux(rng);
      double y = uy(rng);
      while (y == 0.0) y = uy(rng);
      const double h = density_event(Event::D, x, y, *s.spec, probs);
      const double g = 2.0 / s3 * density_ab(y / s3 - x, -y / s3 - x, *s.spec, probs.pD);
      const double scale = std::max(std::abs(h), std::abs(g));
      if (scale == 0.0) continue;  // outside the uniform support in both forms
      if (!std::isnormal(h) || !std::isnormal(g)) {
        ++not_normal;
        continue;
      }
      worst_rel = std::max(worst_rel, std::abs(h - g) / scale);
    }
  }
  std::uniform_real_distribution<double> kx(0.0, 10.0);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  std::size_t non_negative = 0;
  std::size_t checked = 0;
  while (checked < 100000) {
    const double x = kx(rng);
    const double y = -x / 2.0 + 1.5 * x * frac(rng);
    if (!region_contains(Event::K, x, y)) continue;
    ++checked;
    non_negative += !(jacobian_K(x, y) < 0.0);
  }
  return {worst_rel <= 1e-12 && not_normal == 0 && non_negative == 0,
          fmt("D forms: 2 x 1e4 points, max rel diff=%.2e (tol 1e-12), %zu points with a "
              "non-normal value; jacobian_K >= 0 at %zu of %zu K points",
              worst_rel, not_normal, non_negative, checked)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Criterion 7: artifacts are byte-identical across repeats and thread counts.
Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "rcubic_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.ini";
  std::ofstream(cfg) << "seed = 7\nn_samples = 1000000\noutput_dir = " << (dir / "out").string()
                     << "\n[density]\nfamily = gaussian_diagonal\n";
  const std::vector<std::vector<std::string>> commands{
      {"--config", cfg.string(), "verify", "--event", "K"},
      {"--config", cfg.string(), "grid", "--event", "D"},
      {"--config", cfg.string(), "estimate-p", "--method", "mc"},
  };
  const std::vector<std::string> names{"histogram_K.csv", "masses_K.csv", "report_K.json",
                                       "grid_D.csv", "probabilities_mc.json"};
  const int saved = omp_get_max_threads();
  std::vector<std::vector<std::string>> snapshots;
  int failures = 0;
  const std::vector<int> thread_counts{1, 4, 1, 2};
  for (int threads : thread_counts) {
    omp_set_num_threads(threads);
    for (const auto& args : commands) {
      std::ostringstream out, err;
      failures += run_cli(args, out, err) != kExitOk;
    }
    std::vector<std::string> files;
    for (const auto& n : names) files.push_back(slurp(dir / "out" / n));
    snapshots.push_back(std::move(files));
  }
  omp_set_num_threads(saved);
  std::size_t differing = 0;
  std::size_t bytes = 0;
  for (std::size_t k = 0; k < names.size(); ++k) {
    bytes += snapshots[0][k].size();
    for (const auto& snap : snapshots) differing += snap[k] != snapshots[0][k] || snap[k].empty();
  }
  fs::remove_all(dir);
  return {failures == 0 && differing == 0,
          fmt("%zu artifacts (%zu bytes) from verify/grid/estimate-p, runs at 1, 4, 1, 2 threads: "
              "%zu mismatches, %d failed runs",
              names.size(), bytes, differing, failures)};
}

}  // namespace

int main() {
  const std::vector<Check> checks{
      {"1", "closed-form probability anchor", 10.0, probability_anchor},
      {"2", "normalization (tol 1e-2 D, 1e-3 K)", 0.0, [] { return per_case(30.0, normalization); }},
      {"3", "summary-formula verification (n=1e6, 40x40, >=0.99 within 4 sigma, max|z|<=6)", 0.0,
       [] { return per_case(60.0, verification); }},
      {"4", "algebraic round trips", 0.0, round_trips},
      {"5", "solver quality", 0.0, solver_quality},
      {"6", "internal formula consistency", 0.0, formula_consistency},
      {"7", "determinism", 0.0, determinism},
  };

  std::printf("acceptance suite, %d OpenMP thread(s)\n", omp_get_max_threads());
  int failed = 0;
  for (const Check& check : checks) {
    const auto t0 = Clock::now();
    Outcome outcome{false, ""};
    try {
      outcome = check.body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = seconds_since(t0);
    const bool in_budget = check.budget_s <= 0.0 || elapsed <= check.budget_s;
    const bool ok = outcome.ok && in_budget;
    failed += !ok;
    const std::string timing = check.budget_s > 0.0
                                   ? fmt("%.2f s (budget %.0f s)", elapsed, check.budget_s)
                                   : fmt("%.2f s", elapsed);
    std::printf("[%s] criterion %-2s %s: %s; %s\n", ok ? "PASS" : "FAIL", check.id.c_str(),
                check.title.c_str(), outcome.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu checks failed\n", failed, checks.size());
  return failed;
}
