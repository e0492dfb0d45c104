#include "rcubic/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "rcubic/errors.hpp"

namespace rcubic {
namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

const DensitySpec kUniform3{UniformRect{-3.0, 3.0, -3.0, 3.0}};
const DensitySpec kStdGauss{GaussianDiagonal{0.0, 0.0, 1.0, 1.0}};

EventProbabilities exact_uniform3() {
  return {13.0 / 15.0, 2.0 / 15.0, 0.0, 0.0, ProbabilityMethod::Quadrature};
}

// P(D) for coefficients uniform on [-9, 9]^2. With a = -3t the K set is
// |b| < 2 t^(3/2), clipped at |b| <= 9 once t exceeds t0 = 4.5^(2/3).
double uniform9_pD() {
  const double t0 = std::pow(4.5, 2.0 / 3.0);
  const double area_K = 3.0 * (1.6 * std::pow(t0, 2.5) + 18.0 * (3.0 - t0));
  return 1.0 - area_K / 324.0;
}

TEST(RegionContains, Examples) {
  EXPECT_TRUE(region_contains(Event::K, 1.0, 0.0));
  EXPECT_FALSE(region_contains(Event::K, 1.0, -0.5));
  EXPECT_FALSE(region_contains(Event::K, 1.0, 1.0));
  EXPECT_FALSE(region_contains(Event::K, 0.0, 0.0));
  EXPECT_FALSE(region_contains(Event::D, 0.0, -1.0));
  EXPECT_FALSE(region_contains(Event::D, 0.0, 0.0));
  EXPECT_TRUE(region_contains(Event::D, -5.0, 1e-300));
}

TEST(GInverse, Examples) {
  const Coefficients c1 = g_inverse(kSqrt3, 0.0);
  EXPECT_NEAR(c1.a(), -3.0, 1e-15);
  EXPECT_NEAR(c1.b(), 0.0, 1e-15);
  EXPECT_EQ(g_inverse(2.0, 1.0), Coefficients(-7.0, 6.0));
  EXPECT_EQ(g_inverse(1.0, 0.0), Coefficients(-1.0, 0.0));
  EXPECT_THROW(g_inverse(1.0, 1.0), OutsideRegion);
  EXPECT_THROW(g_inverse(1.0, -0.5), OutsideRegion);
}

TEST(GInverse, MatchesExpandedRootProduct) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(0.01, 5.0);
  std::uniform_real_distribution<double> frac(0.001, 0.999);
  for (int i = 0; i < 10000; ++i) {
    const double x = ux(rng);
    const double y = -x / 2.0 + frac(rng) * 1.5 * x;
    const double z = -x - y;
    // (t - x)(t - y)(t - z) = t^3 + (xy + yz + zx) t - xyz
    const Coefficients c = g_inverse(x, y);
    EXPECT_NEAR(c.a(), x * y + y * z + z * x, 1e-12 * (1.0 + x * x));
    EXPECT_NEAR(c.b(), -x * y * z, 1e-12 * (1.0 + x * x * x));
    ASSERT_LT(z, y);
  }
}

TEST(JacobianK, Examples) {
  EXPECT_DOUBLE_EQ(jacobian_K(1.0, 0.0), -2.0);
  EXPECT_DOUBLE_EQ(jacobian_K(2.0, 1.0), -20.0);
  EXPECT_DOUBLE_EQ(jacobian_K(1.0, -0.25), -1.09375);
}

TEST(JacobianK, MatchesFiniteDifferences) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ux(0.2, 3.0);
  std::uniform_real_distribution<double> frac(0.05, 0.95);
  const double h = 1e-6;
  for (int i = 0; i < 2000; ++i) {
    const double x = ux(rng);
    const double y = -x / 2.0 + frac(rng) * 1.5 * x;
    const Coefficients px = g_inverse(x + h, y), mx = g_inverse(x - h, y);
    const Coefficients py = g_inverse(x, y + h), my = g_inverse(x, y - h);
    const double da_dx = (px.a() - mx.a()) / (2 * h), db_dx = (px.b() - mx.b()) / (2 * h);
    const double da_dy = (py.a() - my.a()) / (2 * h), db_dy = (py.b() - my.b()) / (2 * h);
    const double det = da_dx * db_dy - da_dy * db_dx;
    EXPECT_NEAR(jacobian_K(x, y), det, 1e-6 * (1.0 + std::abs(det)));
  }
}

TEST(JacobianK, StrictlyNegativeOnRegion) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(1e-6, 10.0);
  std::uniform_real_distribution<double> uy(-5.0, 10.0);
  int checked = 0;
  while (checked < 100000) {
    const double x = ux(rng);
    const double y = uy(rng);
    if (!region_contains(Event::K, x, y)) continue;
    ++checked;
    ASSERT_LT(jacobian_K(x, y), 0.0) << x << "," << y;
  }
}

TEST(CoeffsFromRStarD, Examples) {
  EXPECT_EQ(coeffs_from_rstar_D(0.0, 1.0), Coefficients(1.0, 0.0));
  const Coefficients c = coeffs_from_rstar_D(-1.0, kSqrt3);
  EXPECT_NEAR(c.a(), 0.0, 1e-14);
  EXPECT_NEAR(c.b(), -8.0, 1e-14);
  EXPECT_THROW(coeffs_from_rstar_D(1.0, 0.0), OutsideRegion);
  EXPECT_THROW(coeffs_from_rstar_D(1.0, -1.0), OutsideRegion);
}

TEST(CoeffsFromRStarD, MatchesComplexExpansion) {
  // (z - w)(z - conj w)(z + 2 Re w) expanded with complex arithmetic.
  auto expand = [](double x, double y) {
    const std::complex<double> w(x, y);
    const std::complex<double> r3(-2.0 * x, 0.0);
    const std::complex<double> e2 = w * std::conj(w) + w * r3 + std::conj(w) * r3;
    const std::complex<double> e3 = w * std::conj(w) * r3;
    return std::pair{e2.real(), -e3.real()};
  };
  const auto [a11, b11] = expand(1.0, 1.0);
  EXPECT_DOUBLE_EQ(a11, -2.0);
  EXPECT_DOUBLE_EQ(b11, 4.0);
  EXPECT_EQ(coeffs_from_rstar_D(1.0, 1.0), Coefficients(-2.0, 4.0));

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ux(-4.0, 4.0);
  std::uniform_real_distribution<double> uy(0.01, 4.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    const auto [a, b] = expand(x, y);
    const Coefficients c = coeffs_from_rstar_D(x, y);
    EXPECT_NEAR(c.a(), a, 1e-12 * (1.0 + std::abs(a)));
    EXPECT_NEAR(c.b(), b, 1e-12 * (1.0 + std::abs(b)));
  }
}

TEST(CoeffsFromRStarD, JacobianMatchesDensityFactor) {
  // |det d(a,b)/d(x,y)| is the factor 4(y^3 + 9x^2 y) of the D density.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-3.0, 3.0);
  std::uniform_real_distribution<double> uy(0.05, 3.0);
  const double h = 1e-6;
  for (int i = 0; i < 2000; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    const Coefficients px = coeffs_from_rstar_D(x + h, y), mx = coeffs_from_rstar_D(x - h, y);
    const Coefficients py = coeffs_from_rstar_D(x, y + h), my = coeffs_from_rstar_D(x, y - h);
    const double det = (px.a() - mx.a()) * (py.b() - my.b()) / (4 * h * h) -
                       (py.a() - my.a()) * (px.b() - mx.b()) / (4 * h * h);
    const double factor = 4.0 * (y * y * y + 9.0 * x * x * y);
    EXPECT_NEAR(std::abs(det), factor, 1e-6 * (1.0 + factor));
  }
}

TEST(DensityAB, Examples) {
  EXPECT_EQ(density_ab(0.0, 1.0, kUniform3, 0.5), 0.0);
  EXPECT_EQ(density_ab(1.0, 1.0, kUniform3, 0.5), 0.0);

  const DensitySpec uniform9{UniformRect{-9.0, 9.0, -9.0, 9.0}};
  const double pD = uniform9_pD();
  EXPECT_NEAR(density_ab(2.0, 0.0, uniform9, pD), 9.0 / pD * 8.0 / 324.0, 1e-15);

  const double p0 = pdf(kStdGauss, 3.0, 0.0);
  EXPECT_NEAR(density_ab(1.0, -1.0, kStdGauss, 0.8), 18.0 / 0.8 * p0, 1e-15);
  EXPECT_NEAR(density_ab(1.0, -1.0, uniform9, pD), 18.0 / pD / 324.0, 1e-15);

  EXPECT_THROW(density_ab(1.0, 0.0, kUniform3, 0.0), InvalidArgument);
  EXPECT_THROW(density_ab(1.0, 0.0, kUniform3, 1.5), InvalidArgument);
}

TEST(DensityEvent, Examples) {
  const EventProbabilities probs = exact_uniform3();
  EXPECT_NEAR(density_event(Event::D, 0.0, 1.0, kUniform3, probs), 5.0 / 39.0, 1e-15);
  EXPECT_NEAR(density_event(Event::K, 1.0, 0.0, kUniform3, probs), 5.0 / 12.0, 1e-15);
  EXPECT_EQ(density_event(Event::K, 1.0, -0.5, kUniform3, probs), 0.0);
  EXPECT_EQ(density_event(Event::K, 1.0, -0.5, kStdGauss, probs), 0.0);
  EXPECT_EQ(density_event(Event::D, 0.3, 0.0, kStdGauss, probs), 0.0);
}

TEST(DensityEvent, ZeroProbabilityIsDegenerate) {
  const EventProbabilities probs{1.0, 0.0, 0.0, 0.0, ProbabilityMethod::Quadrature};
  EXPECT_THROW(density_event(Event::K, 1.0, 0.0, kUniform3, probs), DegenerateDensity);
  EXPECT_NO_THROW(density_event(Event::D, 1.0, 1.0, kUniform3, probs));
}

TEST(DensityEvent, DFormMatchesCardanoVariables) {
  // h(x, y | D) = (2 / sqrt3) g_AB(y / sqrt3 - x, -y / sqrt3 - x | D)
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ux(-3.0, 3.0);
  std::uniform_real_distribution<double> uy(1e-2, 3.0);
  for (const DensitySpec* spec : {&kStdGauss, &kUniform3}) {
    const double pD = 0.87;
    const EventProbabilities probs{pD, 1.0 - pD, 0.0, 0.0, ProbabilityMethod::Quadrature};
    for (int i = 0; i < 10000; ++i) {
      const double x = ux(rng);
      const double y = uy(rng);
      const double h = density_event(Event::D, x, y, *spec, probs);
      const double g = 2.0 / kSqrt3 * density_ab(y / kSqrt3 - x, -y / kSqrt3 - x, *spec, pD);
      ASSERT_NEAR(h, g, 1e-12 * std::max(std::abs(h), 1e-300)) << x << "," << y;
    }
  }
}

TEST(DensityEvent, NonNegativeEverywhere) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  const EventProbabilities probs{0.88, 0.12, 0.0, 0.0, ProbabilityMethod::Quadrature};
  for (int i = 0; i < 100000; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    for (Event e : {Event::D, Event::K}) {
      ASSERT_GE(density_event(e, x, y, kStdGauss, probs), 0.0);
      ASSERT_GE(density_event(e, x, y, kUniform3, probs), 0.0);
    }
  }
}

TEST(RoundTrip, KMapInvertsRStar) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> ux(0.5, 5.0);
  std::uniform_real_distribution<double> frac(1e-3, 1.0 - 1e-3);
  for (int i = 0; i < 100000; ++i) {
    const double x = ux(rng);
    const double y = -x / 2.0 + frac(rng) * 1.5 * x;
    const RStar rs = r_star(g_inverse(x, y));
    const double scale = std::max(1.0, x);
    ASSERT_NEAR(rs.r1, x, 1e-7 * scale);
    ASSERT_NEAR(rs.r2, y, 1e-7 * scale);
  }
}

TEST(RoundTrip, DMapInvertsRStar) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(-5.0, 5.0);
  std::uniform_real_distribution<double> uy(0.1, 5.0);
  for (int i = 0; i < 100000; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    const Coefficients c = coeffs_from_rstar_D(x, y);
    ASSERT_EQ(classify(c), RootClass::D);
    const RStar rs = r_star(c);
    const double scale = std::max({1.0, std::abs(x), y});
    ASSERT_NEAR(rs.r1, x, 1e-8 * scale);
    ASSERT_NEAR(rs.r2, y, 1e-8 * scale);
  }
}

TEST(DensityBreakpoints, PiecesAreSmoothForUniformSupport) {
  // Between consecutive breakpoints the support indicator must be constant.
  const SupportBounds support = support_bounds(kUniform3);
  const EventProbabilities probs = exact_uniform3();
  for (Event e : {Event::D, Event::K}) {
    for (double x : {-2.0, -0.7, 0.3, 1.1, 1.9}) {
      const double lo = -4.0;
      const double hi = 4.0;
      const std::vector<double> cuts = density_breakpoints(e, x, lo, hi, support);
      ASSERT_TRUE(std::is_sorted(cuts.begin(), cuts.end()));
      std::vector<double> knots{lo};
      knots.insert(knots.end(), cuts.begin(), cuts.end());
      knots.push_back(hi);
      for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        ASSERT_LT(knots[k], knots[k + 1]);
        bool first_positive = false;
        for (int s = 1; s < 200; ++s) {
          const double y = knots[k] + (knots[k + 1] - knots[k]) * s / 200.0;
          const bool positive = density_event(e, x, y, kUniform3, probs) > 0.0;
          if (s == 1) first_positive = positive;
          ASSERT_EQ(positive, first_positive) << "x=" << x << " y=" << y;
        }
      }
    }
  }
}

TEST(DensityBreakpoints, KRegionEdgesIncluded) {
  const std::vector<double> cuts = density_breakpoints(Event::K, 1.0, -2.0, 2.0, {});
  ASSERT_EQ(cuts.size(), 2u);
  EXPECT_EQ(cuts[0], -0.5);
  EXPECT_EQ(cuts[1], 1.0);
  const std::vector<double> d = density_breakpoints(Event::D, 1.0, -2.0, 2.0, {});
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0], 0.0);
}

TEST(DensityXBreakpoints, BreakStructureIsConstantBetweenCuts) {
  // Inside one x-piece the number of y-breakpoints in the cell never
  // changes, so the inner integral keeps a single closed form.
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const DensitySpec& spec :
       {kUniform3, DensitySpec{UniformRect{-4.0, 1.0, -2.0, 3.0}}}) {
    const SupportBounds support = support_bounds(spec);
    for (Event e : {Event::D, Event::K}) {
      for (int trial = 0; trial < 400; ++trial) {
        const double w = 0.01 + 1.5 * u(rng);
        const double h = 0.01 + 1.5 * u(rng);
        const Rect cell{-3.0 + 6.0 * u(rng), 0.0, -2.0 + 5.0 * u(rng), 0.0};
        const Rect r{cell.x0, cell.x0 + w, cell.y0, cell.y0 + h};
        const std::vector<XCut> cuts = density_x_breakpoints(e, r, support);
        std::vector<double> knots{r.x0};
        for (const XCut& c : cuts) {
          ASSERT_GE(c.at, r.x0);
          ASSERT_LE(c.at, r.x1);
          ASSERT_GE(c.at, knots.back());
          if (c.at > r.x0 && c.at < r.x1) knots.push_back(c.at);
        }
        knots.push_back(r.x1);
        for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
          const double span = knots[k + 1] - knots[k];
          if (span < 1e-9) continue;
          std::size_t expected = 0;
          for (int s = 1; s < 40; ++s) {
            const double x = knots[k] + span * (s / 40.0);
            const std::size_t n = density_breakpoints(e, x, r.y0, r.y1, support).size();
            if (s == 1) expected = n;
            ASSERT_EQ(n, expected) << to_string(e) << " x=" << x << " cell [" << r.x0 << ", "
                                   << r.x1 << "] x [" << r.y0 << ", " << r.y1 << "]";
          }
        }
      }
    }
  }
}

TEST(DensityXBreakpoints, VerticalTangentsAreSingular) {
  const SupportBounds support = support_bounds(kUniform3);
  // The curve a = -3 of the K map turns vertical at its tip (2, -1).
  const std::vector<XCut> k = density_x_breakpoints(Event::K, {1.9, 2.1, -1.1, -0.9}, support);
  ASSERT_FALSE(k.empty());
  EXPECT_TRUE(std::any_of(k.begin(), k.end(), [](const XCut& c) {
    return c.singular && std::abs(c.at - 2.0) < 1e-15;
  }));
  // Also when the tangent lies on the cell edge.
  const std::vector<XCut> edge = density_x_breakpoints(Event::K, {1.5, 2.0, -1.1, -0.9}, support);
  EXPECT_TRUE(std::any_of(edge.begin(), edge.end(),
                          [](const XCut& c) { return c.singular && c.at == 2.0; }));
  // The D map's a = -3 curve y^2 = 3x^2 - 3 turns vertical at x = +-1.
  const std::vector<XCut> d = density_x_breakpoints(Event::D, {0.5, 1.5, 0.0, 1.0}, support);
  EXPECT_TRUE(std::any_of(d.begin(), d.end(), [](const XCut& c) {
    return c.singular && std::abs(c.at - 1.0) < 1e-15;
  }));
}

}  // namespace
}  // namespace rcubic
