#pragma once

// CSV and JSON artifacts. Machine-readable numbers use 17 significant digits.
//
// Grid CSV layout: the first row holds the x bin edges, the first column the
// y bin edges; the body is row-major with one row per y bin. The row after
// the last y bin carries only the closing y edge.

#include <filesystem>
#include <ostream>
#include <string>

#include <json.hpp>

#include "rcubic/config.hpp"
#include "rcubic/conditional.hpp"
#include "rcubic/verification.hpp"

namespace rcubic {

void write_grid_csv(std::ostream& out, const Grid2D& grid);
void write_histogram_csv(std::ostream& out, const Histogram2D& hist);

nlohmann::json to_json(const EventProbabilities& probs);
nlohmann::json to_json(const ComparisonReport& report);

/// Envelope shared by every JSON artifact: tool version, resolved config,
/// config hash and seed.
nlohmann::json report_envelope(const RunConfig& config);

/// Writes text to a file, replacing it. Throws Error on I/O failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// printf-style %.17g.
std::string format_number(double v);

}  // namespace rcubic
