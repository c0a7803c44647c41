#pragma once

// Independent oracles shared by the test suites. Nothing here calls the
// library routine it is used to check.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hgptsym/hgptsym.hpp"

namespace hgptsym {

template <class C>
void PrintTo(const Polynomial<C>& p, std::ostream* os) {
  *os << to_string(p);
}

}  // namespace hgptsym

namespace oracle {

using hgptsym::Monomial;
using hgptsym::Polynomial;
using hgptsym::Rational;

inline Polynomial<Rational> P(const std::string& text, std::size_t nvars = 3) {
  return hgptsym::parse_polynomial(text, nvars);
}

/// Laplacian in x1..x3 computed term by term on exponent tuples.
inline std::map<std::array<int, 3>, Rational> laplacian_terms(const Polynomial<Rational>& p) {
  std::map<std::array<int, 3>, Rational> out;
  for (const auto& [m, c] : p.terms()) {
    for (int k = 0; k < 3; ++k) {
      const int e = m.exponents[static_cast<std::size_t>(k)];
      if (e < 2) continue;
      std::array<int, 3> key{m.exponents[0], m.exponents[1], m.exponents[2]};
      key[static_cast<std::size_t>(k)] -= 2;
      out[key] += c * Rational(e * (e - 1));
    }
  }
  for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline bool is_harmonic(const Polynomial<Rational>& p) { return laplacian_terms(p).empty(); }

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

/// Product rule on the unit sphere: Gauss-Legendre in cos(theta) and the
/// trapezoid rule in phi; exact for polynomials of degree < min(2 nt, nphi).
template <class F>
auto sphere_integral(F&& f, int nt = 16, int nphi = 32) {
  const auto [x, w] = gauss_legendre(nt);
  decltype(f(std::array<double, 3>{})) sum{};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double ct = x[i], st = std::sqrt(1.0 - ct * ct);
    for (int k = 0; k < nphi; ++k) {
      const double ph = 2.0 * std::numbers::pi * k / nphi;
      sum += f(std::array<double, 3>{st * std::cos(ph), st * std::sin(ph), ct}) *
             (w[i] * 2.0 * std::numbers::pi / nphi);
    }
  }
  return sum;
}

inline double green_closed_form(const std::array<double, 3>& x, const std::array<double, 3>& xp) {
  return 1.0 / (4.0 * std::numbers::pi * std::hypot(x[0] - xp[0], x[1] - xp[1], x[2] - xp[2]));
}

/// Associated Legendre P_n^m(t) with the Condon-Shortley phase, by the
/// standard three-term recurrence in n.
inline double assoc_legendre(int n, int m, double t) {
  double pmm = 1.0;
  const double s = std::sqrt((1.0 - t) * (1.0 + t));
  double fact = 1.0;
  for (int i = 1; i <= m; ++i) {
    pmm *= -fact * s;
    fact += 2.0;
  }
  if (n == m) return pmm;
  double pmmp1 = t * (2.0 * m + 1.0) * pmm;
  if (n == m + 1) return pmmp1;
  double pnm = 0.0;
  for (int l = m + 2; l <= n; ++l) {
    pnm = (t * (2.0 * l - 1.0) * pmmp1 - (l + m - 1.0) * pmm) / (l - m);
    pmm = pmmp1;
    pmmp1 = pnm;
  }
  return pnm;
}

/// r^n Y_n^m(x) from the Legendre recurrence, orthonormal on the sphere.
inline std::complex<double> solid_harmonic(int n, int m, const std::array<double, 3>& x) {
  const double r = std::hypot(x[0], x[1], x[2]);
  const int am = std::abs(m);
  double fac = 1.0;
  for (int k = n - am + 1; k <= n + am; ++k) fac *= k;
  const double norm = std::sqrt((2.0 * n + 1.0) / (4.0 * std::numbers::pi) / fac);
  const double phi = std::atan2(x[1], x[0]);
  const double t = r > 0 ? x[2] / r : 1.0;
  std::complex<double> y = norm * assoc_legendre(n, am, t) * std::polar(1.0, am * phi) * std::pow(r, n);
  if (m < 0) y = (am % 2 ? -1.0 : 1.0) * std::conj(y);
  return y;
}

/// Uniformly distributed rotation from a random unit quaternion.
inline hgptsym::Mat3<double> random_rotation(std::mt19937& rng) {
  std::normal_distribution<double> nd;
  double q[4];
  double n = 0.0;
  for (double& v : q) {
    v = nd(rng);
    n += v * v;
  }
  n = std::sqrt(n);
  for (double& v : q) v /= n;
  const double a = q[0], b = q[1], c = q[2], d = q[3];
  return {{{a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)},
           {2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)},
           {2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d}}};
}

inline std::array<double, 3> random_point(std::mt19937& rng, double rmin, double rmax) {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ur(rmin, rmax);
  std::array<double, 3> v{nd(rng), nd(rng), nd(rng)};
  const double s = ur(rng) / std::hypot(v[0], v[1], v[2]);
  for (double& c : v) c *= s;
  return v;
}

/// Coefficient vectors of polynomials on the union of their monomials, as
/// columns.
template <class A, class B>
Eigen::MatrixXd stacked_coefficients(const std::vector<Polynomial<A>>& a, const std::vector<Polynomial<B>>& b) {
  std::map<Monomial, Eigen::Index> index;
  for (const auto& p : a)
    for (const auto& [m, c] : p.terms()) index.emplace(m, 0);
  for (const auto& p : b)
    for (const auto& [m, c] : p.terms()) index.emplace(m, 0);
  Eigen::Index k = 0;
  for (auto& [m, i] : index) i = k++;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(k, static_cast<Eigen::Index>(a.size() + b.size()));
  Eigen::Index col = 0;
  for (const auto& p : a) {
    for (const auto& [m, c] : p.terms()) out(index[m], col) = hgptsym::ScalarTraits<A>::to_double(c);
    ++col;
  }
  for (const auto& p : b) {
    for (const auto& [m, c] : p.terms()) out(index[m], col) = hgptsym::ScalarTraits<B>::to_double(c);
    ++col;
  }
  return out;
}

/// Rank after normalizing columns, counting singular values above tol.
inline Eigen::Index column_rank(Eigen::MatrixXd m, double tol = 1e-8) {
  if (m.cols() == 0) return 0;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    if (m.col(c).norm() > 0) m.col(c).normalize();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++r;
  return r;
}

/// rank(a) = rank(b) = rank([a b]): the two polynomial lists span the same
/// space.
template <class A, class B>
bool spans_equal(const std::vector<Polynomial<A>>& a, const std::vector<Polynomial<B>>& b, double tol = 1e-8) {
  const Eigen::MatrixXd all = stacked_coefficients(a, b);
  const Eigen::Index na = static_cast<Eigen::Index>(a.size());
  const Eigen::Index ra = column_rank(all.leftCols(na), tol);
  const Eigen::Index rb = column_rank(all.rightCols(all.cols() - na), tol);
  return ra == rb && column_rank(all, tol) == ra;
}

/// True when every polynomial of `a` lies in the span of `b`.
template <class A, class B>
bool span_contains(const std::vector<Polynomial<B>>& b, const std::vector<Polynomial<A>>& a, double tol = 1e-8) {
  const Eigen::MatrixXd all = stacked_coefficients(b, a);
  return column_rank(all, tol) == column_rank(all.leftCols(static_cast<Eigen::Index>(b.size())), tol);
}

/// Evaluates a 6-variable polynomial at (x, y).
template <class C>
double eval6(const Polynomial<C>& p, const std::array<double, 3>& x, const std::array<double, 3>& y) {
  const std::array<double, 6> pt{x[0], x[1], x[2], y[0], y[1], y[2]};
  double s = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double t = hgptsym::ScalarTraits<C>::to_double(c);
    for (std::size_t k = 0; k < 6; ++k) t *= std::pow(pt[k], m.exponents[k]);
    s += t;
  }
  return s;
}

/// Every element of `g` fixes every polynomial, checked at seeded sample
/// points.
template <class C>
double max_fixed_point_violation(const std::vector<Polynomial<C>>& polys, const hgptsym::PointGroup& g,
                                 std::uint32_t seed = 7, int samples = 20) {
  std::mt19937 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const auto x = random_point(rng, 0.5, 1.5), y = random_point(rng, 0.5, 1.5);
    for (const auto& poly : polys) {
      const double base = eval6(poly, x, y);
      for (const auto& r : g.elements) {
        const double v = eval6(poly, hgptsym::apply(r, x), hgptsym::apply(r, y));
        worst = std::max(worst, std::abs(v - base) / std::max(1.0, std::abs(base)));
      }
    }
  }
  return worst;
}

}  // namespace oracle
