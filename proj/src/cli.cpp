#include "rcubic/cli.hpp"

#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rcubic/config.hpp"
#include "rcubic/errors.hpp"
#include "rcubic/probability.hpp"
#include "rcubic/report_io.hpp"
#include "rcubic/verification.hpp"

namespace rcubic {

namespace {

std::string human(double v) { return fmt::format("{:.6g}", v); }

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
};

RunConfig resolve_config(const Overrides& o) {
  RunConfig config = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
  if (o.seed) config.seed = *o.seed;
  if (o.n) {
    if (*o.n == 0) throw ValidationError("n_samples", "must be >= 1");
    config.n_samples = *o.n;
  }
  return config;
}

std::filesystem::path output_path(const RunConfig& config, const std::string& name) {
  std::filesystem::create_directories(config.output_dir);
  return config.output_dir / name;
}

std::string roots_line(const Roots& roots) {
  if (const auto* d = std::get_if<OneRealTwoComplex>(&roots)) {
    return fmt::format("roots: {}, {} + {}i, {} - {}i", human(d->real_root), human(d->re),
                       human(d->im), human(d->re), human(d->im));
  }
  const auto& k = std::get<ThreeReal>(roots);
  return fmt::format("roots: {}, {}, {}", human(k.r1), human(k.r2), human(k.r3));
}

int cmd_classify(double a, double b, std::ostream& out) {
  const Coefficients c(a, b);
  out << fmt::format("{}, discriminant = {}\n", to_string(classify(c)), human(discriminant(c)));
  return kExitOk;
}

int cmd_solve(double a, double b, std::ostream& out) {
  const Coefficients c(a, b);
  const Roots roots = solve(c);
  const RStar rs = r_star(roots);
  out << fmt::format("class: {}\n", to_string(classify(c)));
  out << roots_line(roots) << '\n';
  out << fmt::format("R* = ({}, {})\n", human(rs.r1), human(rs.r2));
  return kExitOk;
}

EventProbabilities probabilities(const RunConfig& config, const std::string& method) {
  if (method == "mc") return estimate_mc(config.density, config.n_samples, config.seed);
  return estimate_quadrature(config.density, config.quad_tol);
}

std::string method_label(const EventProbabilities& p, const RunConfig& config) {
  if (p.method == ProbabilityMethod::MonteCarlo) {
    return fmt::format("Monte Carlo, n = {}, seed = {}", config.n_samples, config.seed);
  }
  return fmt::format("quadrature, tol = {}", human(config.quad_tol));
}

int cmd_density(const RunConfig& config, Event event, double x, double y,
                const std::string& method, std::ostream& out) {
  const EventProbabilities p = probabilities(config, method);
  const double h = density_event(event, x, y, config.density, p);
  out << fmt::format("h({}, {} | {}) = {}\n", human(x), human(y), to_string(event), human(h));
  out << fmt::format("P({}) = {} ({})\n", to_string(event), human(event == Event::D ? p.pD : p.pK),
                     method_label(p, config));
  return kExitOk;
}

std::pair<std::vector<double>, std::vector<double>> grid_edges(const RunConfig& config,
                                                               Event event) {
  GridRanges ranges{};
  if (config.grid.x_range && config.grid.y_range) {
    ranges = {*config.grid.x_range, *config.grid.y_range};
  } else {
    const auto batch = simulate_rstar_batch(config.density, config.n_samples, config.seed);
    ranges = choose_grid(batch, event);
    if (config.grid.x_range) ranges.x = *config.grid.x_range;
    if (config.grid.y_range) ranges.y = *config.grid.y_range;
  }
  return {linear_edges(ranges.x.lo, ranges.x.hi, config.grid.nx),
          linear_edges(ranges.y.lo, ranges.y.hi, config.grid.ny)};
}

int cmd_grid(const RunConfig& config, Event event, std::ostream& out) {
  const EventProbabilities p = estimate_quadrature(config.density, config.quad_tol);
  p.of(event);
  auto [xe, ye] = grid_edges(config, event);
  Grid2D grid{std::move(xe), std::move(ye), {}};
  grid.values.resize(grid.nx() * grid.ny());
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const double x = 0.5 * (grid.x_edges[i] + grid.x_edges[i + 1]);
      const double y = 0.5 * (grid.y_edges[j] + grid.y_edges[j + 1]);
      grid.at(i, j) = density_event(event, x, y, config.density, p);
    }
  }
  std::ostringstream csv;
  write_grid_csv(csv, grid);
  const auto path = output_path(config, fmt::format("grid_{}.csv", to_string(event)));
  write_text_file(path, csv.str());
  out << fmt::format("wrote {} ({}x{} bin-centre densities)\n", path.string(), grid.nx(),
                     grid.ny());
  return kExitOk;
}

int cmd_estimate(const RunConfig& config, const std::string& method, std::ostream& out) {
  const EventProbabilities p = probabilities(config, method);
  nlohmann::json doc = report_envelope(config);
  doc["probabilities"] = to_json(p);
  const auto path = output_path(config, fmt::format("probabilities_{}.json", method));
  write_text_file(path, doc.dump(2) + "\n");
  out << fmt::format("P(D) = {} +- {}, P(K) = {} +- {} ({})\n", human(p.pD), human(p.se_pD),
                     human(p.pK), human(p.se_pK), method_label(p, config));
  out << fmt::format("wrote {}\n", path.string());
  return kExitOk;
}

int cmd_verify(const RunConfig& config, Event event, std::ostream& out) {
  VerificationOptions options;
  options.nx = config.grid.nx;
  options.ny = config.grid.ny;
  options.quad_tol = config.quad_tol;
  if (config.grid.x_range || config.grid.y_range) {
    const auto [xe, ye] = grid_edges(config, event);
    options.ranges = GridRanges{{xe.front(), xe.back()}, {ye.front(), ye.back()}};
  }
  const VerificationResult r = verify(config.density, event, config.n_samples, config.seed, options);
  const std::string tag(to_string(event));

  std::ostringstream hist_csv;
  write_histogram_csv(hist_csv, r.histogram);
  write_text_file(output_path(config, "histogram_" + tag + ".csv"), hist_csv.str());
  std::ostringstream mass_csv;
  write_grid_csv(mass_csv, r.masses);
  write_text_file(output_path(config, "masses_" + tag + ".csv"), mass_csv.str());

  nlohmann::json doc = report_envelope(config);
  doc["event"] = tag;
  doc["probabilities"] = to_json(r.probs);
  doc["n_event"] = r.histogram.n_event();
  doc["n_total"] = r.histogram.n_total;
  doc["n_discarded_S"] = r.histogram.n_discarded_S;
  doc["n_out_of_range"] = r.histogram.n_out_of_range;
  doc["grid"] = {{"x_edges", r.histogram.x_edges}, {"y_edges", r.histogram.y_edges}};
  doc["comparison"] = to_json(r.report);
  const auto report_path = output_path(config, "report_" + tag + ".json");
  write_text_file(report_path, doc.dump(2) + "\n");

  out << fmt::format("verify {}: {} (within 4 sigma: {}, max |z| = {}, chi2 = {} on {} dof)\n",
                     tag, r.report.passed ? "PASSED" : "FAILED",
                     human(r.report.frac_bins_within_4sigma), human(r.report.max_abs_z),
                     human(r.report.chi_square), r.report.dof);
  out << fmt::format("wrote {}\n", report_path.string());
  return r.report.passed ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact conditional root densities of random reduced cubics z^3 + az + b",
               "rcubic"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides overrides;
  app.add_option("--config", overrides.config_path, "Configuration file")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", overrides.seed, "Override the random seed");
  app.add_option("--n", overrides.n, "Override the number of samples");

  std::string event_name = "D";
  double a = 0.0;
  double b = 0.0;
  double x = 0.0;
  double y = 0.0;
  std::string method = "quad";
  std::string prob_method = "quad";

  auto* classify_cmd = app.add_subcommand("classify", "Discriminant event of z^3 + az + b");
  classify_cmd->add_option("a", a)->required();
  classify_cmd->add_option("b", b)->required();

  auto* solve_cmd = app.add_subcommand("solve", "Roots and R* of z^3 + az + b");
  solve_cmd->add_option("a", a)->required();
  solve_cmd->add_option("b", b)->required();

  auto add_event = [&](CLI::App* cmd) {
    cmd->add_option("--event", event_name, "Conditioning event")
        ->required()
        ->check(CLI::IsMember({"D", "K"}));
  };

  auto* density_cmd = app.add_subcommand("density", "Analytic conditional density at a point");
  add_event(density_cmd);
  density_cmd->add_option("--x", x)->required();
  density_cmd->add_option("--y", y)->required();
  density_cmd->add_option("--prob-method", prob_method, "Source of P(D), P(K)")
      ->check(CLI::IsMember({"quad", "mc"}));

  auto* grid_cmd = app.add_subcommand("grid", "Write the conditional density on a grid as CSV");
  add_event(grid_cmd);

  auto* estimate_cmd = app.add_subcommand("estimate-p", "Estimate P(D) and P(K)");
  estimate_cmd->add_option("--method", method)->check(CLI::IsMember({"quad", "mc"}));

  auto* verify_cmd =
      app.add_subcommand("verify", "Compare simulated R* histograms with analytic bin masses");
  add_event(verify_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  const Event event = event_name == "K" ? Event::K : Event::D;
  try {
    if (classify_cmd->parsed()) return cmd_classify(a, b, out);
    if (solve_cmd->parsed()) return cmd_solve(a, b, out);
    const RunConfig config = resolve_config(overrides);
    if (density_cmd->parsed()) return cmd_density(config, event, x, y, prob_method, out);
    if (grid_cmd->parsed()) return cmd_grid(config, event, out);
    if (estimate_cmd->parsed()) return cmd_estimate(config, method, out);
    if (verify_cmd->parsed()) return cmd_verify(config, event, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace rcubic
