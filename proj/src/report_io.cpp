#include "rcubic/report_io.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "rcubic/errors.hpp"

#ifndef RCUBIC_VERSION
#define RCUBIC_VERSION "unknown"
#endif

namespace rcubic {

namespace {

template <class Cell>
void write_csv(std::ostream& out, const std::vector<double>& x_edges,
               const std::vector<double>& y_edges, Cell&& cell) {
  const std::size_t nx = x_edges.size() - 1;
  const std::size_t ny = y_edges.size() - 1;
  out << "y_edge\\x_edge";
  for (double x : x_edges) out << ',' << format_number(x);
  out << '\n';
  for (std::size_t j = 0; j < ny; ++j) {
    out << format_number(y_edges[j]);
    for (std::size_t i = 0; i < nx; ++i) out << ',' << cell(i, j);
    out << ",\n";
  }
  out << format_number(y_edges[ny]);
  for (std::size_t i = 0; i <= nx; ++i) out << ',';
  out << '\n';
}

nlohmann::json optional_number(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

void write_grid_csv(std::ostream& out, const Grid2D& grid) {
  write_csv(out, grid.x_edges, grid.y_edges,
            [&](std::size_t i, std::size_t j) { return format_number(grid.at(i, j)); });
}

void write_histogram_csv(std::ostream& out, const Histogram2D& hist) {
  write_csv(out, hist.x_edges, hist.y_edges,
            [&](std::size_t i, std::size_t j) { return std::to_string(hist.at(i, j)); });
}

nlohmann::json to_json(const EventProbabilities& probs) {
  return {{"pD", probs.pD},
          {"pK", probs.pK},
          {"se_pD", probs.se_pD},
          {"se_pK", probs.se_pK},
          {"method", probs.method == ProbabilityMethod::MonteCarlo ? "mc" : "quadrature"}};
}

nlohmann::json to_json(const ComparisonReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t j = 0; j < report.ny; ++j) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t i = 0; i < report.nx; ++i) {
      row.push_back(optional_number(report.per_bin_z[j * report.nx + i]));
    }
    rows.push_back(std::move(row));
  }
  return {{"per_bin_z", std::move(rows)},
          {"chi_square", report.chi_square},
          {"dof", report.dof},
          {"max_abs_z", report.max_abs_z},
          {"frac_bins_within_4sigma", report.frac_bins_within_4sigma},
          {"retained_bins", report.retained_bins},
          {"pooled_bins", report.pooled_bins},
          {"pooled_z", report.pooled_z ? nlohmann::json(*report.pooled_z) : nlohmann::json(nullptr)},
          {"passed", report.passed}};
}

nlohmann::json report_envelope(const RunConfig& config) {
  return {{"tool", "rcubic"},
          {"version", RCUBIC_VERSION},
          {"config", to_json(config)},
          {"config_hash", config_hash(config)},
          {"seed", config.seed}};
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace rcubic
