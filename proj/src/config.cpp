#include "rcubic/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "rcubic/errors.hpp"

namespace rcubic {

namespace {

using boost::property_tree::ptree;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

// Value text without surrounding blanks or a trailing ; or # comment.
std::string trimmed(std::string s) {
  s = s.substr(0, s.find_first_of(";#"));
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string qualified(const std::string& section, const std::string& key) {
  return section.empty() ? key : section + "." + key;
}

/// Key lookup that remembers which keys were consumed.
class Section {
 public:
  Section(const ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  std::optional<std::string> raw(const std::string& key) {
    used_.insert(key);
    if (tree_ == nullptr) return std::nullopt;
    const auto child = tree_->get_child_optional(key);
    if (!child) return std::nullopt;
    if (!child->empty()) {
      throw ParseError(fmt::format("config: {}: nested values are not supported",
                                   qualified(name_, key)));
    }
    return trimmed(child->data());
  }

  double number(const std::string& key, double fallback) {
    const auto text = raw(key);
    if (!text) return fallback;
    double v = 0.0;
    const char* end = text->data() + text->size();
    const auto [ptr, ec] = std::from_chars(text->data(), end, v);
    if (ec != std::errc() || ptr != end || text->empty()) {
      throw ParseError(fmt::format("config: {}: '{}' is not a number", qualified(name_, key), *text));
    }
    return v;
  }

  std::optional<double> optional_number(const std::string& key) {
    if (tree_ == nullptr || !tree_->get_child_optional(key)) {
      used_.insert(key);
      return std::nullopt;
    }
    return number(key, 0.0);
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
    const auto text = raw(key);
    if (!text) return fallback;
    std::uint64_t v = 0;
    const char* end = text->data() + text->size();
    const auto [ptr, ec] = std::from_chars(text->data(), end, v);
    if (ec == std::errc() && ptr == end && !text->empty()) return v;
    // Also accept integral values written in exponent form, e.g. 1e6.
    const double d = number(key, 0.0);
    if (d >= 0.0 && d < 0x1.0p63 && std::floor(d) == d) return static_cast<std::uint64_t>(d);
    throw ParseError(fmt::format("config: {}: '{}' is not a non-negative integer",
                                 qualified(name_, key), *text));
  }

  std::string text(const std::string& key, const std::string& fallback) {
    return raw(key).value_or(fallback);
  }

  /// Rejects every key that was present but never looked up.
  void reject_unused() const {
    if (tree_ == nullptr) return;
    for (const auto& [key, child] : *tree_) {
      if (name_.empty() && (key == "density" || key == "grid")) continue;
      if (!used_.contains(key)) {
        throw ParseError(fmt::format("config: {}: unknown key", qualified(name_, key)));
      }
    }
  }

 private:
  const ptree* tree_;
  std::string name_;
  std::set<std::string> used_;
};

Marginal parse_marginal(Section& s, char axis) {
  const std::string suffix = std::string("_") + axis;
  const std::string kind = s.text("marginal" + suffix, "normal");
  if (kind == "normal") {
    return Normal{s.number("mu" + suffix, 0.0), s.number("sigma" + suffix, 1.0)};
  }
  if (kind == "uniform") {
    return Uniform{s.number("lo" + suffix, -3.0), s.number("hi" + suffix, 3.0)};
  }
  throw ParseError(fmt::format("config: density.marginal{}: unknown marginal '{}'", suffix, kind));
}

DensitySpec parse_density(Section& s) {
  const std::string family = s.text("family", "uniform_rect");
  if (family == "uniform_rect") {
    return DensitySpec(UniformRect{s.number("a_min", -3.0), s.number("a_max", 3.0),
                                   s.number("b_min", -3.0), s.number("b_max", 3.0)});
  }
  if (family == "gaussian_diagonal") {
    return DensitySpec(GaussianDiagonal{s.number("mean_a", 0.0), s.number("mean_b", 0.0),
                                        s.number("sigma_a", 1.0), s.number("sigma_b", 1.0)});
  }
  if (family == "product") {
    Marginal a = parse_marginal(s, 'a');
    Marginal b = parse_marginal(s, 'b');
    return DensitySpec(ProductOfMarginals{a, b});
  }
  throw ParseError(fmt::format("config: density.family: unknown family '{}'", family));
}

std::optional<Interval> parse_range(Section& s, const std::string& axis) {
  const auto lo = s.optional_number(axis + "_min");
  const auto hi = s.optional_number(axis + "_max");
  if (!lo && !hi) return std::nullopt;
  if (!lo || !hi) {
    throw ValidationError(lo ? axis + "_max" : axis + "_min",
                          "grid ranges must give both bounds");
  }
  if (!std::isfinite(*lo)) throw ValidationError(axis + "_min", "must be finite");
  if (!std::isfinite(*hi)) throw ValidationError(axis + "_max", "must be finite");
  if (!(*lo < *hi)) throw ValidationError(axis + "_max", "must be greater than " + axis + "_min");
  return Interval{*lo, *hi};
}

std::size_t positive_count(Section& s, const std::string& key, std::size_t fallback) {
  const std::uint64_t v = s.unsigned_integer(key, fallback);
  if (v == 0) throw ValidationError(key, "must be >= 1");
  return static_cast<std::size_t>(v);
}

nlohmann::json marginal_json(const Marginal& m) {
  return std::visit(Overloaded{
                        [](const Normal& n) {
                          return nlohmann::json{{"kind", "normal"}, {"mu", n.mu}, {"sigma", n.sigma}};
                        },
                        [](const Uniform& u) {
                          return nlohmann::json{{"kind", "uniform"}, {"lo", u.lo}, {"hi", u.hi}};
                        },
                    },
                    m);
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  ptree tree;
  std::istringstream in{std::string(text)};
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParseError(fmt::format("config: line {}: {}", e.line(), e.message()));
  }

  for (const auto& [key, child] : tree) {
    if (!child.empty() && key != "density" && key != "grid") {
      throw ParseError(fmt::format("config: [{}]: unknown section", key));
    }
  }

  auto section_tree = [&](const char* name) -> const ptree* {
    const auto child = tree.get_child_optional(name);
    return child ? &*child : nullptr;
  };

  Section root(&tree, "");
  Section density(section_tree("density"), "density");
  Section grid(section_tree("grid"), "grid");

  RunConfig config;
  config.seed = root.unsigned_integer("seed", config.seed);
  config.n_samples = positive_count(root, "n_samples", config.n_samples);
  config.quad_tol = root.number("quad_tol", config.quad_tol);
  if (!(config.quad_tol > 0.0) || !std::isfinite(config.quad_tol)) {
    throw ValidationError("quad_tol", "must be a finite value > 0");
  }
  config.output_dir = root.text("output_dir", config.output_dir.string());
  if (config.output_dir.empty()) throw ValidationError("output_dir", "must not be empty");

  config.density = parse_density(density);
  config.grid.nx = positive_count(grid, "nx", config.grid.nx);
  config.grid.ny = positive_count(grid, "ny", config.grid.ny);
  config.grid.x_range = parse_range(grid, "x");
  config.grid.y_range = parse_range(grid, "y");

  root.reject_unused();
  density.reject_unused();
  grid.reject_unused();
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("config: cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

nlohmann::json to_json(const DensitySpec& spec) {
  nlohmann::json j = std::visit(
      Overloaded{
          [](const GaussianDiagonal& g) {
            return nlohmann::json{{"mean_a", g.mean_a}, {"mean_b", g.mean_b},
                                  {"sigma_a", g.sigma_a}, {"sigma_b", g.sigma_b}};
          },
          [](const UniformRect& u) {
            return nlohmann::json{{"a_min", u.a_min}, {"a_max", u.a_max},
                                  {"b_min", u.b_min}, {"b_max", u.b_max}};
          },
          [](const ProductOfMarginals& p) {
            return nlohmann::json{{"marginal_a", marginal_json(p.a)},
                                  {"marginal_b", marginal_json(p.b)}};
          },
      },
      spec.family());
  j["family"] = family_name(spec);
  return j;
}

nlohmann::json to_json(const RunConfig& config) {
  nlohmann::json grid{{"nx", config.grid.nx}, {"ny", config.grid.ny}};
  if (config.grid.x_range) grid["x_range"] = {config.grid.x_range->lo, config.grid.x_range->hi};
  if (config.grid.y_range) grid["y_range"] = {config.grid.y_range->lo, config.grid.y_range->hi};
  return {{"density", to_json(config.density)},
          {"seed", config.seed},
          {"n_samples", config.n_samples},
          {"quad_tol", config.quad_tol},
          {"grid", grid},
          {"output_dir", config.output_dir.generic_string()}};
}

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : to_json(config).dump()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return fmt::format("{:016x}", h);
}

}  // namespace rcubic
