#include "rcubic/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rcubic/errors.hpp"

namespace rcubic {

Coefficients::Coefficients(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("cubic coefficients must be finite");
  }
}

std::string_view to_string(RootClass c) noexcept {
  switch (c) {
    case RootClass::D: return "D";
    case RootClass::K: return "K";
    case RootClass::S: return "S";
  }
  return "?";
}

std::string_view to_string(Event e) noexcept {
  return e == Event::D ? "D" : "K";
}

RootClass to_root_class(Event e) noexcept {
  return e == Event::D ? RootClass::D : RootClass::K;
}

double signed_cbrt(double t) noexcept { return std::cbrt(t); }

double discriminant(const Coefficients& c) noexcept {
  const double a = c.a();
  const double b = c.b();
  return b * b / 4.0 + a * a * a / 27.0;
}

double default_classification_eps(const Coefficients& c) noexcept {
  const double a = c.a();
  const double b = c.b();
  return 1e-12 * std::max({1.0, b * b / 4.0, std::abs(a * a * a) / 27.0});
}

RootClass classify(const Coefficients& c, double eps) {
  if (!(eps >= 0.0)) throw InvalidArgument("classification eps must be >= 0");
  const double delta = discriminant(c);
  if (delta > eps) return RootClass::D;
  if (delta < -eps) return RootClass::K;
  return RootClass::S;
}

RootClass classify(const Coefficients& c) {
  return classify(c, default_classification_eps(c));
}

namespace {

// Evaluates both cube roots of Cardano's formula. The radicand of larger
// magnitude is evaluated directly; the other one follows from A*B = -a/3,
// which avoids cancellation in -b/2 +- sqrt(delta).
ABPair cardano(double a, double b, double delta) noexcept {
  const double root = std::sqrt(delta);
  if (b >= 0.0) {
    const double B = signed_cbrt(-b / 2.0 - root);
    return {-a / (3.0 * B), B};
  }
  const double A = signed_cbrt(-b / 2.0 + root);
  return {A, -a / (3.0 * A)};
}

double newton_step(double t, double a, double b) noexcept {
  const double slope = 3.0 * t * t + a;
  if (slope == 0.0) return t;
  const double next = t - (t * t * t + a * t + b) / slope;
  const double before = std::abs(t * t * t + a * t + b);
  const double after = std::abs(next * next * next + a * next + b);
  return after <= before ? next : t;
}

[[noreturn]] void throw_degenerate() {
  throw DegenerateInput("coefficients lie on the repeated-root event S");
}

}  // namespace

Roots solve(const Coefficients& c) {
  const double a = c.a();
  const double b = c.b();
  const double delta = discriminant(c);
  switch (classify(c)) {
    case RootClass::S:
      throw_degenerate();
    case RootClass::D: {
      const ABPair ab = cardano(a, b, delta);
      const double t = newton_step(ab.A + ab.B, a, b);
      return OneRealTwoComplex{t, -t / 2.0,
                               std::numbers::sqrt3 / 2.0 * (ab.A - ab.B)};
    }
    case RootClass::K: {
      // Trigonometric method; a < 0 holds on K.
      const double scale = 2.0 * std::sqrt(-a / 3.0);
      const double arg = (3.0 * b / a) * std::sqrt(-3.0 / a) / 2.0;
      const double theta = std::acos(std::clamp(arg, -1.0, 1.0));
      double r[3];
      for (int k = 0; k < 3; ++k) {
        r[k] = scale * std::cos(theta / 3.0 - 2.0 * std::numbers::pi * k / 3.0);
      }
      std::sort(r, r + 3, std::greater<>());
      return ThreeReal{r[0], r[1], r[2]};
    }
  }
  throw_degenerate();
}

RStar r_star(const Roots& roots) noexcept {
  if (const auto* d = std::get_if<OneRealTwoComplex>(&roots)) {
    return {d->re, d->im};
  }
  const auto& k = std::get<ThreeReal>(roots);
  return {k.r1, k.r2};
}

RStar r_star(const Coefficients& c) { return r_star(solve(c)); }

ABPair ab_variables(const Coefficients& c) {
  if (classify(c) != RootClass::D) {
    throw WrongEvent("Cardano variables A, B are defined on the event D only");
  }
  return cardano(c.a(), c.b(), discriminant(c));
}

}  // namespace rcubic
