#pragma once

// Globally adaptive 2-D cubature over rectangles.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rcubic {

enum class Execution { Serial, Parallel };

struct Rect {
  double x0;
  double x1;
  double y0;
  double y1;

  double area() const noexcept { return (x1 - x0) * (y1 - y0); }
  std::array<Rect, 4> quarters() const noexcept;
};

/// Estimate of the integral over one rectangle.
using CellRule = std::function<double(const Rect&)>;

struct CubatureOptions {
  int initial_splits = 4;  ///< domain is first cut into splits x splits cells
  std::size_t max_cells = std::size_t{1} << 20;
  std::size_t max_batch = 512;
  Execution execution = Execution::Parallel;
};

struct CubatureResult {
  double value = 0.0;
  double error = 0.0;  ///< sum of per-cell |coarse - refined| estimates
  std::size_t cells = 0;
  bool converged = false;
};

/// Refines the cells with the largest error estimates until the summed
/// estimate drops below abs_tol or max_cells is reached. The error of a cell
/// is |rule(cell) - sum of rule(quarter)|; its value is the quarter sum.
/// The result is identical for every execution mode and thread count.
CubatureResult adaptive_cubature(const CellRule& rule, const Rect& domain,
                                 double abs_tol, const CubatureOptions& options = {});

namespace detail {

inline constexpr std::size_t kGaussPoints = 7;

struct GaussNodes {
  std::array<double, kGaussPoints> x;  ///< on [-1, 1]
  std::array<double, kGaussPoints> w;
};

const GaussNodes& gauss_nodes();

/// Gauss-Legendre estimate of g over [lo, hi].
template <class G>
double gauss_1d(G&& g, double lo, double hi) {
  const auto& nodes = gauss_nodes();
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double s = 0.0;
  for (std::size_t i = 0; i < kGaussPoints; ++i) s += nodes.w[i] * g(mid + half * nodes.x[i]);
  return half * s;
}

}  // namespace detail

/// A place where the outer integrand of iterated_gauss changes form. At a
/// singular cut it behaves like |x - at|^(k/2) for some integer k, as next
/// to a vertical tangent of a break curve.
struct XCut {
  double at;
  bool singular = false;
};

namespace detail {

/// Gauss estimate of g over [lo, hi]; a singular end is handled with the
/// substitution x = end -+ (hi - lo) u^2, which makes half-integer powers of
/// the distance to that end polynomial in u.
template <class G>
double gauss_piece(G&& g, double lo, double hi, bool singular_lo, bool singular_hi) {
  if (singular_lo && singular_hi) {
    const double mid = 0.5 * (lo + hi);
    return gauss_piece(g, lo, mid, true, false) + gauss_piece(g, mid, hi, false, true);
  }
  const double len = hi - lo;
  if (singular_hi) {
    return gauss_1d([&](double u) { return 2.0 * len * u * g(hi - len * u * u); }, 0.0, 1.0);
  }
  if (singular_lo) {
    return gauss_1d([&](double u) { return 2.0 * len * u * g(lo + len * u * u); }, 0.0, 1.0);
  }
  return gauss_1d(g, lo, hi);
}

}  // namespace detail

/// Tensor Gauss-Legendre rule in x, with the inner y integral split at the
/// points returned by breaks(x, y0, y1) so that the integrand is smooth on
/// every inner piece. `breaks` must return ascending values in (y0, y1).
/// The outer integral is split at x_cuts (ascending, inside [x0, x1]): the
/// places where a break curve enters or leaves the cell or turns vertical,
/// beyond which the inner integral changes form. A cut on x0 or x1 only marks
/// that end as singular.
template <class F, class B>
double iterated_gauss(const Rect& r, F&& integrand, B&& breaks,
                      std::span<const XCut> x_cuts = {}) {
  auto inner = [&](double x) {
    const std::vector<double> cuts = breaks(x, r.y0, r.y1);
    double lo = r.y0;
    double total = 0.0;
    auto piece = [&](double hi) {
      total += detail::gauss_1d([&](double y) { return integrand(x, y); }, lo, hi);
      lo = hi;
    };
    for (double c : cuts) piece(c);
    piece(r.y1);
    return total;
  };
  double lo = r.x0;
  bool singular_lo = false;
  double total = 0.0;
  for (const XCut& c : x_cuts) {
    if (c.at <= r.x0) {
      singular_lo = singular_lo || c.singular;
      continue;
    }
    if (c.at >= r.x1) break;
    total += detail::gauss_piece(inner, lo, c.at, singular_lo, c.singular);
    lo = c.at;
    singular_lo = c.singular;
  }
  bool singular_hi = false;
  for (const XCut& c : x_cuts) singular_hi = singular_hi || (c.at >= r.x1 && c.singular);
  return total + detail::gauss_piece(inner, lo, r.x1, singular_lo, singular_hi);
}

}  // namespace rcubic
