#pragma once

#include <array>
#include <optional>
#include <string>

#include <boost/multiprecision/gmp.hpp>

#include "onticlab/errors.hpp"

namespace onticlab {

/// Arbitrary-precision rational. Certificates and rational-mode weights are
/// carried in this type so that derivations replay without rounding.
using Rational = boost::multiprecision::mpq_rational;

/// Parse "p/q" or "p". Throws ParseError on malformed input.
inline Rational parse_rational(const std::string& text) {
  try {
    Rational r(text);
    return r;
  } catch (const std::exception&) {
    throw ParseError("not a rational number: '" + text + "'");
  }
}

inline std::string format_rational(const Rational& r) { return r.str(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Element of the quadratic field Q(sqrt(3)): value a + b*sqrt(3).
/// Closed under + - *; enough to carry Bloch vectors of qubit states whose
/// equatorial angles are multiples of 30 degrees, which is what the
/// axis-aligned rational-mode constructions produce.
struct Root3 {
  Rational a{0};
  Rational b{0};

  Root3() = default;
  Root3(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}
  static Root3 rational(Rational r) { return Root3(std::move(r), Rational(0)); }

  Root3 operator+(const Root3& o) const { return {a + o.a, b + o.b}; }
  Root3 operator-(const Root3& o) const { return {a - o.a, b - o.b}; }
  Root3 operator-() const { return {-a, -b}; }
  Root3 operator*(const Root3& o) const {
    return {a * o.a + 3 * b * o.b, a * o.b + b * o.a};
  }
  Root3 operator*(const Rational& r) const { return {a * r, b * r}; }
  bool operator==(const Root3& o) const { return a == o.a && b == o.b; }
  bool is_zero() const { return a == 0 && b == 0; }

  double value() const { return to_double(a) + to_double(b) * 1.7320508075688772935; }
};

/// Exact Bloch vector with components in Q(sqrt(3)).
using ExactBloch = std::array<Root3, 3>;

inline Root3 dot(const ExactBloch& x, const ExactBloch& y) {
  Root3 s;
  for (int i = 0; i < 3; ++i) s = s + x[i] * y[i];
  return s;
}

inline ExactBloch scale(const ExactBloch& x, const Rational& w) {
  return {x[0] * w, x[1] * w, x[2] * w};
}

inline ExactBloch add(const ExactBloch& x, const ExactBloch& y) {
  return {x[0] + y[0], x[1] + y[1], x[2] + y[2]};
}

/// cos of k*30 degrees as an exact Q(sqrt(3)) value, or nullopt when the
/// angle is not on the 30-degree grid.
inline std::optional<Root3> exact_cos_deg(long degrees) {
  if (degrees % 30 != 0) return std::nullopt;
  long k = ((degrees / 30) % 12 + 12) % 12;
  const Rational h(1, 2);
  switch (k) {
    case 0: return Root3(Rational(1), Rational(0));
    case 1: return Root3(Rational(0), h);        // sqrt(3)/2
    case 2: return Root3(h, Rational(0));
    case 3: return Root3(Rational(0), Rational(0));
    case 4: return Root3(-h, Rational(0));
    case 5: return Root3(Rational(0), -h);
    case 6: return Root3(Rational(-1), Rational(0));
    case 7: return Root3(Rational(0), -h);
    case 8: return Root3(-h, Rational(0));
    case 9: return Root3(Rational(0), Rational(0));
    case 10: return Root3(h, Rational(0));
    default: return Root3(Rational(0), h);
  }
}

inline std::optional<Root3> exact_sin_deg(long degrees) {
  return exact_cos_deg(90 - degrees);
}

}  // namespace onticlab
