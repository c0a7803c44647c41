#pragma once

// Scalar plumbing shared by every module: the exact rational type, the
// per-scalar traits used by the templated algorithms, numeric tolerances and
// the library's exception type.

#include <gmpxx.h>

#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hgptsym {

using Rational = mpq_class;

/// Raised for every contract violation and numerical failure in the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numeric thresholds. `rank` may be overridden with the HGPTSYM_TOL
/// environment variable; the others are fixed.
struct Tolerances {
  double rank = 1e-9;           // rank, pivot and trace decisions in floating point
  double trace_integer = 1e-6;  // distance of a floating trace from an integer
  double element_match = 1e-9;  // max-norm distance for matching group elements
  double orthogonality = 1e-12; // ||R^T R - I||_max
  double span_residual = 1e-10; // residual when expressing a polynomial in a basis
  double svd_relative = 1e-10;  // null-space threshold relative to sigma_max
};

inline const Tolerances& tolerances() {
  static const Tolerances tol = [] {
    Tolerances t;
    if (const char* env = std::getenv("HGPTSYM_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end != env && v > 0.0 && std::isfinite(v)) t.rank = v;
    }
    return t;
  }();
  return tol;
}

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x, double /*tol*/ = 0.0) { return sgn(x) == 0; }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational abs(const Rational& x) { return ::abs(x); }
  static std::string name() { return "rational"; }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x, double tol = 0.0) { return std::abs(x) <= tol; }
  static double to_double(double x) { return x; }
  static double abs(double x) { return std::abs(x); }
  static std::string name() { return "double"; }
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::exact; };

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational make_rational(long num, long den) {
  Rational q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  return q;
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// accepted only when it lies within `tol` of `x`.
inline std::optional<Rational> reconstruct_rational(double x, long max_den = 1000,
                                                    double tol = 1e-9) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued-fraction convergents.
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_d = std::floor(r);
    if (std::abs(a_d) > 1e15) break;
    const long a = static_cast<long>(a_d);
    const long h2 = a * h1 + h0;
    const long k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= tol) {
      return make_rational(h1, k1);
    }
    const double frac = r - a_d;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  if (k1 != 0 && std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= tol) {
    return make_rational(h1, k1);
  }
  return std::nullopt;
}

/// Display form of a floating value: a small fraction when one fits, else
/// a round-trippable decimal.
inline std::string display_number(double x) {
  if (auto q = reconstruct_rational(x)) return q->get_str();
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace hgptsym
