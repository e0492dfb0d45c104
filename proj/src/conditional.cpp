#include "rcubic/conditional.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "rcubic/errors.hpp"

namespace rcubic {

double EventProbabilities::of(Event e) const {
  const double p = e == Event::D ? pD : pK;
  if (!(p > 0.0)) {
    throw DegenerateDensity(std::string("P(") + std::string(to_string(e)) +
                            ") is zero; the conditional density is undefined");
  }
  return p;
}

bool region_contains(Event event, double x, double y) noexcept {
  if (event == Event::D) return y > 0.0;
  return x > 0.0 && -x / 2.0 < y && y < x;
}

Coefficients g_inverse(double x, double y) {
  if (!region_contains(Event::K, x, y)) {
    throw OutsideRegion("(x, y) is not an ordered pair of the two largest real roots");
  }
  return {-x * x - x * y - y * y, x * y * (x + y)};
}

double jacobian_K(double x, double y) noexcept {
  return -(x - y) * (2.0 * x + y) * (x + 2.0 * y);
}

Coefficients coeffs_from_rstar_D(double x, double y) {
  if (!region_contains(Event::D, x, y)) {
    throw OutsideRegion("imaginary part of the complex pair must be positive");
  }
  return {y * y - 3.0 * x * x, 2.0 * x * y * y + 2.0 * x * x * x};
}

double density_ab(double x, double y, const DensitySpec& spec, double pD) {
  if (!(pD > 0.0 && pD <= 1.0)) throw InvalidArgument("P(D) must lie in (0, 1]");
  if (x <= y) return 0.0;
  const double x3 = x * x * x;
  const double y3 = y * y * y;
  return 9.0 / pD * (x3 - y3) * pdf(spec, -3.0 * x * y, -x3 - y3);
}

double density_event(Event event, double x, double y, const DensitySpec& spec,
                     const EventProbabilities& probs) {
  const double p = probs.of(event);
  if (!region_contains(event, x, y)) return 0.0;
  if (event == Event::D) {
    const double f = pdf(spec, y * y - 3.0 * x * x, 2.0 * x * y * y + 2.0 * x * x * x);
    return 4.0 / p * (y * y * y + 9.0 * x * x * y) * f;
  }
  const double f = pdf(spec, -x * x - x * y - y * y, x * y * (x + y));
  return (x - y) * (2.0 * x + y) * (x + 2.0 * y) / p * f;
}

namespace {

class Breakpoints {
 public:
  Breakpoints(double lo, double hi) : lo_(lo), hi_(hi) {}

  void add(double y) {
    if (std::isfinite(y) && lo_ < y && y < hi_) points_.push_back(y);
  }

  /// Both roots of y^2 = t.
  void add_square_roots(double t) {
    if (t < 0.0) return;
    const double r = std::sqrt(t);
    add(r);
    add(-r);
  }

  /// Real roots of c2 y^2 + c1 y + c0 = 0 with c2 != 0.
  void add_quadratic_roots(double c2, double c1, double c0) {
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0) return;
    const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
    if (q != 0.0) {
      add(q / c2);
      add(c0 / q);
    } else {
      add(0.0);
    }
  }

  std::vector<double> take() && {
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    return std::move(points_);
  }

 private:
  double lo_;
  double hi_;
  std::vector<double> points_;
};

}  // namespace

std::vector<double> density_breakpoints(Event event, double x, double y_lo,
                                        double y_hi, const SupportBounds& support) {
  Breakpoints points(y_lo, y_hi);
  if (event == Event::D) {
    points.add(0.0);
    // a = y^2 - 3x^2, b = 2x(y^2 + x^2)
    if (support.a_range) {
      points.add_square_roots(support.a_range->lo + 3.0 * x * x);
      points.add_square_roots(support.a_range->hi + 3.0 * x * x);
    }
    if (support.b_range && x != 0.0) {
      points.add_square_roots(support.b_range->lo / (2.0 * x) - x * x);
      points.add_square_roots(support.b_range->hi / (2.0 * x) - x * x);
    }
  } else {
    points.add(x);
    points.add(-x / 2.0);
    // a = -(y^2 + xy + x^2), b = x y^2 + x^2 y
    if (support.a_range) {
      points.add_quadratic_roots(1.0, x, x * x + support.a_range->lo);
      points.add_quadratic_roots(1.0, x, x * x + support.a_range->hi);
    }
    if (support.b_range && x != 0.0) {
      points.add_quadratic_roots(x, x * x, -support.b_range->lo);
      points.add_quadratic_roots(x, x * x, -support.b_range->hi);
    }
  }
  return std::move(points).take();
}

namespace {

// Real root of x^3 + p x - q = 0 with p >= 0, which is unique.
double monotone_cubic_root(double p, double q) {
  const Coefficients c{p, -q};
  if (p > 0.0 && classify(c) == RootClass::D) {
    return std::get<OneRealTwoComplex>(solve(c)).real_root;
  }
  return signed_cbrt(q);
}

}  // namespace

std::vector<XCut> density_x_breakpoints(Event event, const Rect& cell,
                                        const SupportBounds& support) {
  Breakpoints crossings(cell.x0, cell.x1);
  std::vector<XCut> cuts;
  auto vertical_tangent = [&](double x) {
    if (std::isfinite(x) && cell.x0 <= x && x <= cell.x1) cuts.push_back({x, true});
  };
  const std::array<double, 2> edges{cell.y0, cell.y1};
  std::vector<double> a_levels;
  std::vector<double> b_levels;
  if (support.a_range) a_levels = {support.a_range->lo, support.a_range->hi};
  if (support.b_range) b_levels = {support.b_range->lo, support.b_range->hi};
  if (event == Event::D) {
    // y^2 = a + 3x^2 and y^2 = b / (2x) - x^2
    for (double a : a_levels) {
      if (a <= 0.0) {
        vertical_tangent(std::sqrt(-a / 3.0));
        vertical_tangent(-std::sqrt(-a / 3.0));
      }
      for (double y : edges) crossings.add_square_roots((y * y - a) / 3.0);
    }
    for (double b : b_levels) {
      vertical_tangent(std::cbrt(b / 2.0));
      for (double y : edges) crossings.add(monotone_cubic_root(y * y, b / 2.0));
    }
  } else {
    for (double y : edges) {
      crossings.add(y);
      crossings.add(-2.0 * y);
    }
    // x^2 + xy + y^2 = -a and x y^2 + x^2 y = b
    for (double a : a_levels) {
      if (a <= 0.0) {
        vertical_tangent(std::sqrt(-4.0 * a / 3.0));
        vertical_tangent(-std::sqrt(-4.0 * a / 3.0));
      }
      for (double y : edges) crossings.add_quadratic_roots(1.0, y, y * y + a);
    }
    for (double b : b_levels) {
      vertical_tangent(std::cbrt(-4.0 * b));
      for (double y : edges) {
        if (y != 0.0) crossings.add_quadratic_roots(y, y * y, -b);
      }
    }
  }
  for (double x : std::move(crossings).take()) cuts.push_back({x, false});
  std::sort(cuts.begin(), cuts.end(), [](const XCut& l, const XCut& r) {
    return l.at < r.at || (l.at == r.at && l.singular && !r.singular);
  });
  // Coincident cuts collapse onto the first, which is singular if any is.
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](const XCut& l, const XCut& r) { return l.at == r.at; }),
             cuts.end());
  return cuts;
}

}  // namespace rcubic
