#pragma once

// Run configuration: an INI-style document with top-level keys and the
// [density] and [grid] sections.
//
//   seed = 42
//   n_samples = 1000000
//   quad_tol = 1e-7
//   output_dir = out
//
//   [density]
//   family = uniform_rect        ; gaussian_diagonal | uniform_rect | product
//   a_min = -3
//   a_max = 3
//   b_min = -3
//   b_max = 3
//
//   [grid]
//   nx = 40
//   ny = 40
//   x_min = 0                    ; optional, x_min/x_max and y_min/y_max in pairs
//   x_max = 2

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rcubic/density.hpp"

namespace rcubic {

struct GridConfig {
  std::size_t nx = 40;
  std::size_t ny = 40;
  std::optional<Interval> x_range;
  std::optional<Interval> y_range;
};

struct RunConfig {
  DensitySpec density{UniformRect{-3.0, 3.0, -3.0, 3.0}};
  std::uint64_t seed = 0;
  std::size_t n_samples = 1000000;
  double quad_tol = 1e-7;
  GridConfig grid;
  std::filesystem::path output_dir = ".";
};

/// Parses and validates a configuration document. Keys left out take the
/// defaults of RunConfig; an unknown section or key, or a key that does not
/// belong to the selected density family, is a ParseError. Values that
/// parse but violate a constraint raise ValidationError naming the key.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::filesystem::path& path);

/// Fully resolved configuration, every default spelled out.
nlohmann::json to_json(const RunConfig& config);
nlohmann::json to_json(const DensitySpec& spec);

/// 64-bit FNV-1a of the canonical JSON form, as 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace rcubic
