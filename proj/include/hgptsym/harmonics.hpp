#pragma once

// Real harmonic polynomial bases I_n^l, complex solid harmonics H_n^m,
// the change of basis between them, and the harmonic expansion of the
// Laplace Green's function.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hgptsym/matrix.hpp"
#include "hgptsym/polynomial.hpp"

namespace hgptsym {

enum class BasisStyle { Integer, Orthonormal };

inline std::string to_string(BasisStyle s) {
  return s == BasisStyle::Integer ? "integer" : "orthonormal";
}

inline BasisStyle parse_basis_style(std::string_view s) {
  if (s == "integer") return BasisStyle::Integer;
  if (s == "orthonormal") return BasisStyle::Orthonormal;
  throw Error("unknown basis style '" + std::string(s) + "' (expected integer|orthonormal)");
}

namespace detail {

inline mpz_class double_factorial(long n) {
  mpz_class r = 1;
  for (long k = n; k > 1; k -= 2) r *= k;
  return r;
}

inline mpz_class factorial(long n) {
  mpz_class r = 1;
  for (long k = 2; k <= n; ++k) r *= k;
  return r;
}

inline mpz_class binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace detail

/// Surface integral of a monomial over the unit sphere divided by pi:
/// 4 (2a-1)!! (2b-1)!! (2c-1)!! / (2s+1)!! for exponents (2a, 2b, 2c), zero
/// when any exponent is odd.
inline Rational sphere_monomial_integral_over_pi(const Monomial& m) {
  for (std::size_t k = 0; k < 3; ++k)
    if (m.exponents[k] % 2 != 0) return 0;
  const long a = m.exponents[0] / 2, b = m.exponents[1] / 2, c = m.exponents[2] / 2;
  const mpz_class num = 4 * detail::double_factorial(2 * a - 1) * detail::double_factorial(2 * b - 1) *
                        detail::double_factorial(2 * c - 1);
  const mpz_class den = detail::double_factorial(2 * (a + b + c) + 1);
  Rational r{num, den};
  r.canonicalize();
  return r;
}

/// <P, Q>_S / pi for real polynomials, exact.
inline Rational sphere_inner_product_over_pi(const Polynomial<Rational>& p, const Polynomial<Rational>& q) {
  Rational s = 0;
  const Polynomial<Rational> pq = p * q;
  for (const auto& [m, c] : pq.terms()) s += c * sphere_monomial_integral_over_pi(m);
  return s;
}

/// Real basis of the 2n+1 harmonic polynomials of degree n. The basis
/// function with index l (-n <= l <= n) is scales[l+n] * polynomials[l+n];
/// the polynomials themselves always have rational coefficients.
struct HarmonicBasis {
  int degree = 0;
  BasisStyle style = BasisStyle::Integer;
  std::vector<Polynomial<Rational>> polynomials;
  std::vector<double> scales;

  std::size_t size() const { return polynomials.size(); }

  Polynomial<double> scaled(std::size_t k) const { return polynomials[k].cast<double>() * scales[k]; }

  std::vector<double> evaluate(const std::array<double, 3>& x) const {
    std::vector<double> v(size());
    for (std::size_t k = 0; k < size(); ++k)
      v[k] = scales[k] * polynomials[k].evaluate<double>(std::span<const double>(x));
    return v;
  }
};

namespace detail {

inline const std::vector<std::vector<const char*>>& integer_table() {
  static const std::vector<std::vector<const char*>> t = {
      {"1"},
      {"x1", "x2", "x3"},
      {"x1^2 - x2^2", "x1^2 - x3^2", "x1 x2", "x1 x3", "x2 x3"},
      {"x1^3 - 3 x1 x2^2", "x2^3 - 3 x1^2 x2", "x1^3 - 3 x1 x3^2", "x3^3 - 3 x1^2 x3",
       "x2^3 - 3 x2 x3^2", "x3^3 - 3 x2^2 x3", "x1 x2 x3"},
      {"x1^4 - 6 x1^2 x2^2 + x2^4", "x1^4 - 6 x1^2 x3^2 + x3^4", "x2^4 - 6 x2^2 x3^2 + x3^4",
       "x1^3 x2 - x1 x2^3", "x1^3 x3 - x1 x3^3", "x2^3 x3 - x2 x3^3", "3 x1^2 x2 x3 - x2 x3^3",
       "3 x1 x2^2 x3 - x1 x3^3", "3 x1 x2 x3^2 - x2 x1^3"},
  };
  return t;
}

// Shapes of the orthonormal table; normalization constants are derived.
inline const std::vector<std::vector<const char*>>& orthonormal_table() {
  static const std::vector<std::vector<const char*>> t = {
      {"1"},
      {"x1", "x2", "x3"},
      {"x1 x2", "x2 x3", "x1 x3", "x1^2 - 2 x2^2 + x3^2", "x1^2 - x3^2"},
      {"x1^3 - 3 x1 x2^2", "-3 x1^2 x2 + x2^3", "x1 (x1^2 + x2^2 - 4 x3^2)", "-3 x1^2 x3 + x3^3",
       "x2 (x1^2 + x2^2 - 4 x3^2)", "x3 (x1^2 - 4 x2^2 + x3^2)", "x1 x2 x3"},
      {"x1^4 - 6 x1^2 x2^2 + x2^4", "7 x1^4 - x2^4 + 8 x3^4 + 6 x1^2 (x2^2 - 8 x3^2)",
       "-x1^4 + 4 x2^4 - 27 x2^2 x3^2 + 4 x3^4 + 3 x1^2 (x2^2 + x3^2)", "x1 x2 (x1^2 - x2^2)",
       "x1 x3 (x1^2 - x3^2)", "x2 x3 (x2^2 - x3^2)", "-x2 x3 (-6 x1^2 + x2^2 + x3^2)",
       "-x1 x3 (x1^2 - 6 x2^2 + x3^2)", "-x1 x2 (x1^2 + x2^2 - 6 x3^2)"},
  };
  return t;
}

/// Null space of the Laplacian on homogeneous degree-n polynomials.
inline std::vector<Polynomial<Rational>> harmonic_null_space(int n) {
  const auto cols = monomials_of_degree(n);
  const auto rows = n >= 2 ? monomials_of_degree(n - 2) : std::vector<Monomial>{};
  Matrix<Rational> lap(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    Polynomial<Rational> mono(3);
    mono.add_term(cols[j], 1);
    const Polynomial<Rational> lap_mono = laplacian(mono);
    for (const auto& [m, c] : lap_mono.terms()) {
      const auto it = std::lower_bound(rows.begin(), rows.end(), m);
      lap(static_cast<std::size_t>(it - rows.begin()), j) = c;
    }
  }
  std::vector<Polynomial<Rational>> out;
  for (const auto& v : null_space(lap, 0.0)) {
    Polynomial<Rational> p(3);
    for (std::size_t j = 0; j < cols.size(); ++j) p.add_term(cols[j], v[j]);
    out.push_back(canonicalize(p));
  }
  return out;
}

}  // namespace detail

/// 2n+1 real harmonic polynomials of degree n. Degrees up to 4 use the
/// tabulated bases; higher degrees are built from the Laplacian null space
/// (and Gram-Schmidt orthogonalized on the sphere for the orthonormal style).
inline HarmonicBasis real_basis(int n, BasisStyle style) {
  if (n < 0) throw Error("real_basis: negative degree");
  HarmonicBasis basis;
  basis.degree = n;
  basis.style = style;
  if (n <= 4) {
    const auto& rows = style == BasisStyle::Integer ? detail::integer_table()[static_cast<std::size_t>(n)]
                                                    : detail::orthonormal_table()[static_cast<std::size_t>(n)];
    for (const char* s : rows) basis.polynomials.push_back(parse_polynomial(s));
  } else {
    basis.polynomials = detail::harmonic_null_space(n);
    if (style == BasisStyle::Orthonormal) {
      std::vector<Polynomial<Rational>> ortho;
      for (const auto& p : basis.polynomials) {
        Polynomial<Rational> v = p;
        for (const auto& u : ortho)
          v -= (sphere_inner_product_over_pi(p, u) / sphere_inner_product_over_pi(u, u)) * u;
        ortho.push_back(canonicalize(v));
      }
      basis.polynomials = std::move(ortho);
    }
  }
  for (const auto& p : basis.polynomials) {
    if (style == BasisStyle::Integer) {
      basis.scales.push_back(1.0);
    } else {
      const double norm2 = std::numbers::pi * sphere_inner_product_over_pi(p, p).get_d();
      basis.scales.push_back(1.0 / std::sqrt(norm2));
    }
  }
  return basis;
}

/// H_n^m = scale * (re + i im) as polynomials in x.
struct ComplexSolidHarmonic {
  int degree = 0;
  int order = 0;
  Polynomial<Rational> re{3};
  Polynomial<Rational> im{3};
  double scale = 1.0;

  std::complex<double> evaluate(const std::array<double, 3>& x) const {
    const std::span<const double> pt(x);
    return scale * std::complex<double>(re.evaluate<double>(pt), im.evaluate<double>(pt));
  }

  /// Monomial-expansion coefficient a^{MH}_{beta m}.
  std::complex<double> monomial_coefficient(const Monomial& beta) const {
    return scale * std::complex<double>(re.coefficient(beta).get_d(), im.coefficient(beta).get_d());
  }
};

/// Solid harmonics r^n Y_n^m for m = -n..n (index m+n), L2-orthonormal on
/// the unit sphere, Condon-Shortley phase, H_n^{-m} = (-1)^m conj(H_n^m).
///
/// For m >= 0: r^n P_n^m(cos t) e^{i m psi} = (x1 + i x2)^m * sum_k c_k x3^{n-m-2k} r^{2k}
/// where c_k are the coefficients of d^m P_n / dx^m.
inline std::vector<ComplexSolidHarmonic> complex_solid_harmonics(int n) {
  if (n < 0) throw Error("complex_solid_harmonics: negative degree");
  // Legendre P_n(t) = 2^-n sum_k (-1)^k C(n,k) C(2n-2k,n) t^{n-2k}.
  std::vector<Rational> legendre(static_cast<std::size_t>(n) + 1, Rational(0));
  for (long k = 0; 2 * k <= n; ++k) {
    const mpz_class num = detail::binomial(n, k) * detail::binomial(2 * n - 2 * k, n);
    const mpz_class den = mpz_class(1) << static_cast<unsigned>(n);
    Rational c{num, den};
    c.canonicalize();
    if (k % 2) c = -c;
    legendre[static_cast<std::size_t>(n - 2 * k)] = c;
  }
  const auto x1 = Polynomial<Rational>::variable(3, 0);
  const auto x2 = Polynomial<Rational>::variable(3, 1);
  const auto x3 = Polynomial<Rational>::variable(3, 2);
  const auto r2 = x1 * x1 + x2 * x2 + x3 * x3;

  std::vector<ComplexSolidHarmonic> out(static_cast<std::size_t>(2 * n + 1));
  for (int m = 0; m <= n; ++m) {
    // d^m/dt^m of the Legendre polynomial.
    std::vector<Rational> deriv(legendre);
    for (int d = 0; d < m; ++d) {
      std::vector<Rational> next(deriv.size(), Rational(0));
      for (std::size_t e = 1; e < deriv.size(); ++e) next[e - 1] = deriv[e] * Rational(static_cast<long>(e));
      deriv = std::move(next);
    }
    Polynomial<Rational> axial(3);
    for (int e = 0; e <= n - m; ++e) {
      const Rational& c = deriv[static_cast<std::size_t>(e)];
      if (sgn(c) == 0) continue;
      const int k = (n - m - e) / 2;
      axial += c * (x3.pow(static_cast<unsigned>(e)) * r2.pow(static_cast<unsigned>(k)));
    }
    // (x1 + i x2)^m expanded into real and imaginary parts.
    Polynomial<Rational> pre = Polynomial<Rational>::constant(3, 1);
    Polynomial<Rational> pim(3);
    for (int k = 0; k < m; ++k) {
      Polynomial<Rational> nre = pre * x1 - pim * x2;
      Polynomial<Rational> nim = pre * x2 + pim * x1;
      pre = std::move(nre);
      pim = std::move(nim);
    }
    const double norm = std::sqrt((2.0 * n + 1.0) / (4.0 * std::numbers::pi) *
                                  detail::factorial(n - m).get_d() / detail::factorial(n + m).get_d());
    ComplexSolidHarmonic h;
    h.degree = n;
    h.order = m;
    h.re = pre * axial;
    h.im = pim * axial;
    h.scale = (m % 2 ? -1.0 : 1.0) * norm;
    out[static_cast<std::size_t>(n + m)] = h;
    if (m > 0) {
      ComplexSolidHarmonic neg;
      neg.degree = n;
      neg.order = -m;
      neg.re = h.re;
      neg.im = -h.im;
      neg.scale = (m % 2 ? -1.0 : 1.0) * h.scale;
      out[static_cast<std::size_t>(n - m)] = neg;
    }
  }
  return out;
}

/// Coefficients a_{lm} with H_n^m = sum_l a_{lm} I_n^l.
struct BasisChange {
  int degree = 0;
  BasisStyle style = BasisStyle::Integer;
  Eigen::MatrixXcd coefficients;  // (l+n, m+n) -> a_{lm}

  /// The matrix A with (A)_{mn} = a_{nm}: rows indexed by the complex order m,
  /// columns by the real index l.
  Eigen::MatrixXcd matrix() const { return coefficients.transpose(); }
};

namespace detail {

inline Matrix<Rational> coefficient_matrix(std::span<const Polynomial<Rational>> polys,
                                           const std::vector<Monomial>& monos) {
  Matrix<Rational> b(monos.size(), polys.size());
  for (std::size_t j = 0; j < polys.size(); ++j)
    for (const auto& [m, c] : polys[j].terms()) {
      const auto it = std::lower_bound(monos.begin(), monos.end(), m);
      if (it == monos.end() || *it != m) throw Error("polynomial has a monomial outside the expected range");
      b(static_cast<std::size_t>(it - monos.begin()), j) = c;
    }
  return b;
}

inline std::vector<Rational> coefficient_vector(const Polynomial<Rational>& p, const std::vector<Monomial>& monos) {
  std::vector<Rational> v(monos.size(), Rational(0));
  for (const auto& [m, c] : p.terms()) {
    const auto it = std::lower_bound(monos.begin(), monos.end(), m);
    if (it == monos.end() || *it != m) throw Error("polynomial has a monomial outside the expected range");
    v[static_cast<std::size_t>(it - monos.begin())] = c;
  }
  return v;
}

}  // namespace detail

/// Solves H_n^m = sum_l a_{lm} I_n^l exactly on the monomial coefficients.
inline BasisChange basis_change(int n, BasisStyle style) {
  const HarmonicBasis basis = real_basis(n, style);
  const auto harmonics = complex_solid_harmonics(n);
  const auto monos = monomials_of_degree(n);
  const SpanSolver<Rational> solver(detail::coefficient_matrix(basis.polynomials, monos));
  const std::size_t dim = basis.size();
  BasisChange bc;
  bc.degree = n;
  bc.style = style;
  bc.coefficients = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t mi = 0; mi < dim; ++mi) {
    const auto& h = harmonics[mi];
    const auto cre = solver.solve(detail::coefficient_vector(h.re, monos));
    const auto cim = solver.solve(detail::coefficient_vector(h.im, monos));
    for (std::size_t l = 0; l < dim; ++l) {
      bc.coefficients(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(mi)) =
          h.scale / basis.scales[l] * std::complex<double>(cre[l].get_d(), cim[l].get_d());
    }
  }
  return bc;
}

/// Partial sum over n = 0..N of (1/(2n+1)) sum_m K_n^m(x) conj(H_n^m(x')),
/// with K_n^m(x) = H_n^m(x) / |x|^{2n+1}.
inline double green_expansion(const std::array<double, 3>& x, const std::array<double, 3>& xp, int truncation) {
  const double rx = std::hypot(x[0], x[1], x[2]);
  const double rxp = std::hypot(xp[0], xp[1], xp[2]);
  if (rx == 0.0) throw Error("green_expansion: |x| must be positive");
  if (rxp >= rx) throw Error("green_expansion: requires |x'| < |x|");
  if (truncation < 0) throw Error("green_expansion: negative truncation degree");
  std::complex<double> sum = 0.0;
  for (int n = 0; n <= truncation; ++n) {
    std::complex<double> inner = 0.0;
    for (const auto& h : complex_solid_harmonics(n)) inner += h.evaluate(x) * std::conj(h.evaluate(xp));
    sum += inner / (static_cast<double>(2 * n + 1) * std::pow(rx, 2 * n + 1));
  }
  return sum.real();
}

}  // namespace hgptsym
