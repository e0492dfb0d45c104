#pragma once

// Classification and solution of reduced cubics z^3 + a z + b.

#include <string_view>
#include <variant>

namespace rcubic {

/// Coefficients of the reduced cubic z^3 + a z + b. Always finite.
class Coefficients {
 public:
  Coefficients() = default;
  /// Throws InvalidArgument when either value is NaN or infinite.
  Coefficients(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

  friend bool operator==(const Coefficients&, const Coefficients&) = default;

 private:
  double a_ = 0.0;
  double b_ = 0.0;
};

/// Discriminant event of a cubic.
///   D: one real root and a complex-conjugate pair
///   K: three distinct real roots
///   S: repeated root (probability zero under a continuous density)
enum class RootClass { D, K, S };

/// The two events on which R* is defined.
enum class Event { D, K };

std::string_view to_string(RootClass c) noexcept;
std::string_view to_string(Event e) noexcept;
RootClass to_root_class(Event e) noexcept;

struct OneRealTwoComplex {
  double real_root;
  double re;  ///< real part of the conjugate pair
  double im;  ///< positive imaginary part of the conjugate pair
};

/// Real roots in strictly descending order.
struct ThreeReal {
  double r1;
  double r2;
  double r3;
};

using Roots = std::variant<OneRealTwoComplex, ThreeReal>;

/// Root summary R*.
///   D: (real part, |imaginary part|) of the complex pair
///   K: (largest, second-largest) real root
struct RStar {
  double r1;
  double r2;
};

/// Cardano's auxiliary cube roots, with real root A + B.
struct ABPair {
  double A;
  double B;
};

/// Real cube root, odd in t.
double signed_cbrt(double t) noexcept;

/// b^2/4 + a^3/27. Positive on D, negative on K, zero on S.
double discriminant(const Coefficients& c) noexcept;

/// Scale-aware band used to decide that a discriminant is zero:
/// 1e-12 * max(1, b^2/4, |a|^3/27).
double default_classification_eps(const Coefficients& c) noexcept;

RootClass classify(const Coefficients& c, double eps);
RootClass classify(const Coefficients& c);

/// All three roots. Throws DegenerateInput on the event S.
Roots solve(const Coefficients& c);

/// Throws DegenerateInput on the event S.
RStar r_star(const Coefficients& c);

/// R* from already computed roots.
RStar r_star(const Roots& roots) noexcept;

/// Cardano variables A >= B with A*B = -a/3 and A^3 + B^3 = -b.
/// Throws WrongEvent unless classify(c) == D.
ABPair ab_variables(const Coefficients& c);

}  // namespace rcubic
