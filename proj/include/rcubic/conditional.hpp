#pragma once

// Closed-form conditional densities of the root summary R* and the geometry
// of the maps between coefficient space and R* space.

#include <vector>

#include "rcubic/cubature.hpp"
#include "rcubic/cubic.hpp"
#include "rcubic/density.hpp"

namespace rcubic {

enum class ProbabilityMethod { MonteCarlo, Quadrature };

/// P(D) and P(K) for a coefficient density, with the uncertainty of the
/// method that produced them.
struct EventProbabilities {
  double pD;
  double pK;
  double se_pD;
  double se_pK;
  ProbabilityMethod method;

  /// Probability of the event; throws DegenerateDensity when it is not
  /// strictly positive, since the conditional density is then undefined.
  double of(Event e) const;
};

/// Open image region of R*.
///   D: y > 0
///   K: x > 0 and -x/2 < y < x
bool region_contains(Event event, double x, double y) noexcept;

/// Coefficients whose largest two real roots are (x, y):
/// (-x^2 - xy - y^2, xy(x + y)). Throws OutsideRegion off the K region.
Coefficients g_inverse(double x, double y);

/// Determinant of the derivative of g_inverse: -(x - y)(2x + y)(x + 2y).
double jacobian_K(double x, double y) noexcept;

/// Coefficients whose complex roots are x +- iy: (y^2 - 3x^2, 2xy^2 + 2x^3).
/// Throws OutsideRegion when y <= 0.
Coefficients coeffs_from_rstar_D(double x, double y);

/// Conditional density of Cardano's (A, B) given D:
/// (9 / pD)(x^3 - y^3) f(-3xy, -x^3 - y^3) for x > y, else 0.
double density_ab(double x, double y, const DensitySpec& spec, double pD);

/// Conditional density h(x, y | event) of R*.
///   D: (4 / pD)(y^3 + 9x^2 y) f(y^2 - 3x^2, 2xy^2 + 2x^3) for y > 0
///   K: (1 / pK)(x - y)(2x + y)(x + 2y) f(-x^2 - xy - y^2, xy(x + y)) on the K region
/// and zero elsewhere.
double density_event(Event event, double x, double y, const DensitySpec& spec,
                     const EventProbabilities& probs);

/// Values of y in the open interval (y_lo, y_hi) at which, for fixed x, the
/// coefficient image of (x, y) under the event's inverse map crosses an edge
/// of the density's support, or (for K) the region boundary. Between two
/// consecutive returned values density_event(event, x, ., ...) is smooth.
/// Sorted ascending.
std::vector<double> density_breakpoints(Event event, double x, double y_lo,
                                        double y_hi, const SupportBounds& support);

/// Places in [cell.x0, cell.x1] at which one of the curves traced by
/// density_breakpoints crosses the cell's lower or upper edge (regular cuts,
/// strictly inside) or has a vertical tangent (singular cuts). Between two
/// consecutive cuts the y-integral of density_event over the cell is a
/// smooth function of x, up to half-integer powers at singular cuts.
/// Sorted ascending.
std::vector<XCut> density_x_breakpoints(Event event, const Rect& cell,
                                          const SupportBounds& support);

}  // namespace rcubic
