#pragma once

// Induced representations of a point group on harmonic polynomials and on
// symmetric products of them, the averaging projector and its fixed
// subspace, subspace intersection, Molien series and the HGPT coefficient
// patterns read off an invariant basis.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "hgptsym/groups.hpp"
#include "hgptsym/harmonics.hpp"
#include "hgptsym/matrix.hpp"
#include "hgptsym/polynomial.hpp"

namespace hgptsym {

enum class SpaceKind { Harmonic, SymmetricProduct };

/// HGPT index pair: i in -p..p, j in -q..q. For harmonic spaces j is 0.
struct IndexPair {
  int i = 0;
  int j = 0;
  bool operator==(const IndexPair&) const = default;
};

template <class S>
std::vector<S> coefficient_vector(const Polynomial<S>& p, const std::vector<Monomial>& monos) {
  std::vector<S> v(monos.size(), S(0));
  for (const auto& [m, c] : p.terms()) {
    const auto it = std::lower_bound(monos.begin(), monos.end(), m);
    if (it == monos.end() || *it != m) throw Error("polynomial has a monomial outside the representation space");
    v[static_cast<std::size_t>(it - monos.begin())] = c;
  }
  return v;
}

/// Moves a 3-variable polynomial onto the x or y block of the 6-variable
/// product space.
template <class S>
Polynomial<S> embed(const Polynomial<S>& p, Block block) {
  if (p.variable_count() != 3 || block == Block::Both) throw Error("embed: expected a 3-variable polynomial and one block");
  Polynomial<S> out(6);
  const std::size_t shift = block == Block::X ? 0 : 3;
  for (const auto& [m, c] : p.terms()) {
    Monomial e;
    for (std::size_t k = 0; k < 3; ++k) e.exponents[k + shift] = m.exponents[k];
    out.add_term(e, c);
  }
  return out;
}

template <class S>
std::vector<Polynomial<S>> basis_polynomials(const HarmonicBasis& b) {
  if constexpr (ScalarTraits<S>::exact) {
    if (b.style != BasisStyle::Integer)
      throw Error("exact arithmetic needs the integer basis; orthonormal scale factors are irrational");
    return b.polynomials;
  } else {
    std::vector<Polynomial<S>> out;
    for (std::size_t k = 0; k < b.size(); ++k) out.push_back(b.scaled(k));
    return out;
  }
}

template <class S>
struct RepresentationSpace {
  SpaceKind kind = SpaceKind::Harmonic;
  int p = 0;
  int q = 0;
  BasisStyle style = BasisStyle::Integer;
  std::vector<Polynomial<S>> basis;
  std::vector<IndexPair> indices;
  std::vector<Monomial> monomials;  // coordinate system for span solves
  std::shared_ptr<const SpanSolver<S>> solver;

  std::size_t dimension() const { return basis.size(); }

  std::string label() const {
    return kind == SpaceKind::Harmonic ? "H_" + std::to_string(p)
                                       : "S_" + std::to_string(p) + std::to_string(q);
  }

  std::vector<S> coordinates(const Polynomial<S>& poly) const {
    return solver->solve(coefficient_vector(poly, monomials));
  }

  Polynomial<S> polynomial(const std::vector<S>& coords) const {
    Polynomial<S> out(basis.front().variable_count());
    for (std::size_t k = 0; k < coords.size(); ++k)
      if (!ScalarTraits<S>::is_zero(coords[k])) out += basis[k] * coords[k];
    return out;
  }

  void finalize() {
    Matrix<S> b(monomials.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const auto v = coefficient_vector(basis[j], monomials);
      for (std::size_t i = 0; i < v.size(); ++i) b(i, j) = v[i];
    }
    solver = std::make_shared<const SpanSolver<S>>(b);
  }
};

/// The 2p+1 harmonic polynomials of degree p.
template <class S>
RepresentationSpace<S> harmonic_space(int p, BasisStyle style) {
  RepresentationSpace<S> sp;
  sp.kind = SpaceKind::Harmonic;
  sp.p = p;
  sp.style = style;
  sp.basis = basis_polynomials<S>(real_basis(p, style));
  for (int i = -p; i <= p; ++i) sp.indices.push_back({i, 0});
  sp.monomials = monomials_of_degree(p);
  sp.finalize();
  return sp;
}

/// S_pq: I_p^i(x) I_q^j(y) + I_p^i(y) I_q^j(x) over all (i, j), ordered with i
/// outer. For p = q only i <= j is kept and the diagonal elements are
/// I_p^i(x) I_p^i(y), so the coordinates of a symmetric form are exactly the
/// entries N_ij.
template <class S>
RepresentationSpace<S> symmetric_product_space(int p, int q, BasisStyle style) {
  if (p < 0 || q < 0) throw Error("symmetric_product_space: negative degree");
  RepresentationSpace<S> sp;
  sp.kind = SpaceKind::SymmetricProduct;
  sp.p = p;
  sp.q = q;
  sp.style = style;
  const auto bp = basis_polynomials<S>(real_basis(p, style));
  const auto bq = basis_polynomials<S>(real_basis(q, style));
  for (int i = -p; i <= p; ++i)
    for (int j = -q; j <= q; ++j) {
      if (p == q && j < i) continue;
      const auto& a = bp[static_cast<std::size_t>(i + p)];
      const auto& b = bq[static_cast<std::size_t>(j + q)];
      Polynomial<S> e = embed(a, Block::X) * embed(b, Block::Y);
      if (!(p == q && i == j)) e += embed(a, Block::Y) * embed(b, Block::X);
      sp.basis.push_back(std::move(e));
      sp.indices.push_back({i, j});
    }
  for (const auto& [a, b] : {std::pair{p, q}, std::pair{q, p}})
    for (const auto& mx : monomials_of_degree(a, 0, 3))
      for (const auto& my : monomials_of_degree(b, 3, 3)) {
        Monomial m = mx;
        for (std::size_t k = 3; k < 6; ++k) m.exponents[k] = my.exponents[k];
        sp.monomials.push_back(m);
      }
  std::sort(sp.monomials.begin(), sp.monomials.end());
  sp.monomials.erase(std::unique(sp.monomials.begin(), sp.monomials.end()), sp.monomials.end());
  sp.finalize();
  return sp;
}

/// pi(R): row i holds the coordinates of basis[i](Rx[, Ry]) in the basis, so
/// that pi(R1 R2) = pi(R1) pi(R2).
template <class S>
Matrix<S> action_matrix(const RepresentationSpace<S>& space, const Mat3<S>& r) {
  const std::size_t d = space.dimension();
  Matrix<S> pi(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto row = space.coordinates(compose_linear(space.basis[i], r, Block::Both));
    for (std::size_t j = 0; j < d; ++j) pi(i, j) = row[j];
  }
  return pi;
}

/// M_pi = (1/|G|) sum_R pi(R).
template <class S>
Matrix<S> averaging_projector(const RepresentationSpace<S>& space, const PointGroup& group) {
  const auto elements = group.elements_as<S>();
  Matrix<S> sum(space.dimension(), space.dimension());
  for (const auto& r : elements) sum += action_matrix(space, r);
  sum *= S(1) / S(static_cast<long>(elements.size()));
  return sum;
}

template <class S>
struct InvariantSubspace {
  RepresentationSpace<S> space;
  std::string group;
  Matrix<S> projector;
  double trace = 0.0;
  std::size_t dimension = 0;
  std::vector<std::size_t> source_rows;       // rows of M_pi kept as the basis
  std::vector<std::vector<S>> coordinates;    // canonicalized, in the space basis
  std::vector<Polynomial<S>> polynomials;     // canonicalized

  /// Coordinates as columns of a (space dimension) x (dimension) matrix.
  Eigen::MatrixXd coordinate_matrix() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(space.dimension()),
                                              static_cast<Eigen::Index>(coordinates.size()));
    for (std::size_t c = 0; c < coordinates.size(); ++c)
      for (std::size_t r = 0; r < coordinates[c].size(); ++r)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = ScalarTraits<S>::to_double(coordinates[c][r]);
    return m;
  }
};

namespace detail {

template <class S>
void clean(std::vector<S>& v) {
  if constexpr (!ScalarTraits<S>::exact) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    for (double& x : v)
      if (std::abs(x) <= 1e-11 * m) x = 0.0;
  }
}

}  // namespace detail

/// Projector method: dimension = Tr(M_pi), basis = the first m independent rows of
/// M_pi (each row is the group average of one basis element), canonicalized.
template <class S>
InvariantSubspace<S> invariant_subspace(const RepresentationSpace<S>& space, const PointGroup& group) {
  InvariantSubspace<S> inv;
  inv.space = space;
  inv.group = group.name;
  inv.projector = averaging_projector(space, group);
  const S tr = inv.projector.trace();
  inv.trace = ScalarTraits<S>::to_double(tr);
  const double rounded = std::round(inv.trace);
  if constexpr (ScalarTraits<S>::exact) {
    if (tr.get_den() != 1) throw Error("projector trace " + tr.get_str() + " is not an integer");
  } else {
    if (std::abs(inv.trace - rounded) > tolerances().trace_integer)
      throw Error("projector trace " + std::to_string(inv.trace) + " is not within tolerance of an integer");
  }
  inv.dimension = static_cast<std::size_t>(rounded);
  const std::size_t d = space.dimension();
  std::vector<std::vector<S>> kept;
  for (std::size_t r = 0; r < d && kept.size() < inv.dimension; ++r) {
    auto row = inv.projector.row(r);
    detail::clean(row);
    Matrix<S> stacked(kept.size() + 1, d);
    for (std::size_t k = 0; k < kept.size(); ++k)
      for (std::size_t j = 0; j < d; ++j) stacked(k, j) = kept[k][j];
    for (std::size_t j = 0; j < d; ++j) stacked(kept.size(), j) = row[j];
    if (rank(stacked, tolerances().rank) == kept.size() + 1) {
      kept.push_back(std::move(row));
      inv.source_rows.push_back(r);
    }
  }
  if (kept.size() != inv.dimension)
    throw Error("averaging projector has rank " + std::to_string(kept.size()) + " but trace " +
                std::to_string(inv.dimension));
  for (auto& coords : kept) {
    Polynomial<S> poly = space.polynomial(coords);
    if constexpr (!ScalarTraits<S>::exact) poly.prune(1e-11 * poly.max_abs_coefficient());
    const auto s = canonical_scale(poly);
    for (auto& c : coords) c *= s;
    inv.polynomials.push_back(poly * s);
    inv.coordinates.push_back(std::move(coords));
  }
  return inv;
}

/// Largest |S(Rx, Ry) - S(x, y)| over `samples` random rational points per
/// group element, relative to max(1, |S(x, y)|).
inline double fixed_point_residual(const Polynomial<double>& s, const PointGroup& group, std::size_t samples = 20,
                                   std::uint32_t seed = 12345) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(-16, 16);
  const std::size_t n = s.variable_count();
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    std::vector<double> pt(n);
    for (auto& v : pt) v = dist(rng) / 8.0;
    const double base = s.evaluate<double>(std::span<const double>(pt));
    for (const auto& r : group.elements) {
      std::vector<double> moved(n);
      for (std::size_t b = 0; b < n / 3; ++b)
        for (std::size_t i = 0; i < 3; ++i) {
          double acc = 0.0;
          for (std::size_t j = 0; j < 3; ++j) acc += r[i][j] * pt[3 * b + j];
          moved[3 * b + i] = acc;
        }
      const double v = s.evaluate<double>(std::span<const double>(moved));
      worst = std::max(worst, std::abs(v - base) / std::max(1.0, std::abs(base)));
    }
  }
  return worst;
}

/// Numerical rank after scaling columns to unit length.
inline std::size_t numeric_rank(Eigen::MatrixXd m, double tol) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const double n = m.col(c).norm();
    if (n > 0.0) m.col(c) /= n;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) > tol) ++r;
  return r;
}

/// True when the column spans of a and b coincide.
inline bool same_span(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol = 1e-8) {
  if (a.rows() != b.rows()) return false;
  const std::size_t ra = numeric_rank(a, tol);
  const std::size_t rb = numeric_rank(b, tol);
  Eigen::MatrixXd ab(a.rows(), a.cols() + b.cols());
  ab << a, b;
  return ra == rb && numeric_rank(ab, tol) == ra;
}

/// Subspace intersection: with C = [A B] and N a basis of null(C), the columns of
/// A * N(1:p, :) span range(A) n range(B). The null space comes from an SVD
/// with threshold svd_relative * sigma_max.
inline Eigen::MatrixXd intersect_subspaces(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows()) throw Error("intersect_subspaces: ambient dimensions differ");
  const Eigen::Index n = a.rows(), p = a.cols(), q = b.cols();
  if (p == 0 || q == 0) return Eigen::MatrixXd(n, 0);
  Eigen::MatrixXd c(n, p + q);
  c << a, b;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thresh = tolerances().svd_relative * (sv.size() > 0 ? sv(0) : 0.0);
  std::vector<Eigen::Index> null_cols;
  for (Eigen::Index k = 0; k < p + q; ++k)
    if (k >= sv.size() || sv(k) <= thresh) null_cols.push_back(k);
  Eigen::MatrixXd out(n, static_cast<Eigen::Index>(null_cols.size()));
  for (std::size_t k = 0; k < null_cols.size(); ++k)
    out.col(static_cast<Eigen::Index>(k)) = a * svd.matrixV().col(null_cols[k]).head(p);
  return out;
}

struct MolienSeries {
  std::vector<long> g;  // invariant polynomials of degree m
  std::vector<long> h;  // invariant harmonic polynomials of degree m, h = (1 - t^2) g
};

/// Truncated series of (1/|G|) sum_R 1/det(I - tR). For each R,
/// det(I - tR) = 1 - e1 t + e2 t^2 - e3 t^3, so the coefficients of its
/// reciprocal obey c_k = e1 c_{k-1} - e2 c_{k-2} + e3 c_{k-3}.
inline MolienSeries molien_series(const PointGroup& group, int max_degree) {
  if (max_degree < 0) throw Error("molien_series: negative degree");
  const std::size_t len = static_cast<std::size_t>(max_degree) + 1;
  auto accumulate = [&]<class S>(std::type_identity<S>) {
    std::vector<S> sum(len, S(0));
    for (const auto& r : group.elements_as<S>()) {
      const S e1 = r[0][0] + r[1][1] + r[2][2];
      const S e2 = (r[0][0] * r[1][1] - r[0][1] * r[1][0]) + (r[0][0] * r[2][2] - r[0][2] * r[2][0]) +
                   (r[1][1] * r[2][2] - r[1][2] * r[2][1]);
      const S e3 = determinant(r);
      std::vector<S> c(len, S(0));
      for (std::size_t k = 0; k < len; ++k) {
        S v = k == 0 ? S(1) : S(0);
        if (k >= 1) v += e1 * c[k - 1];
        if (k >= 2) v -= e2 * c[k - 2];
        if (k >= 3) v += e3 * c[k - 3];
        c[k] = v;
        sum[k] += v;
      }
    }
    std::vector<long> g(len);
    for (std::size_t k = 0; k < len; ++k) {
      const S avg = sum[k] / S(static_cast<long>(group.order()));
      if constexpr (ScalarTraits<S>::exact) {
        if (avg.get_den() != 1) throw Error("Molien coefficient " + avg.get_str() + " is not an integer");
        g[k] = avg.get_num().get_si();
      } else {
        const double rounded = std::round(avg);
        if (std::abs(avg - rounded) > tolerances().trace_integer)
          throw Error("Molien coefficient " + std::to_string(avg) + " is not within tolerance of an integer");
        g[k] = static_cast<long>(rounded);
      }
    }
    return g;
  };
  MolienSeries out;
  out.g = group.exact ? accumulate(std::type_identity<Rational>{}) : accumulate(std::type_identity<double>{});
  out.h.resize(len);
  for (std::size_t k = 0; k < len; ++k) out.h[k] = out.g[k] - (k >= 2 ? out.g[k - 2] : 0);
  return out;
}

/// Invariant harmonic polynomials of degree m by the projector method; the dimension
/// must agree with h_m from the Molien series.
template <class S>
InvariantSubspace<S> invariant_harmonics(const PointGroup& group, int m, BasisStyle style = BasisStyle::Integer) {
  auto inv = invariant_subspace(harmonic_space<S>(m, style), group);
  const long h = molien_series(group, m).h[static_cast<std::size_t>(m)];
  if (static_cast<long>(inv.dimension) != h)
    throw Error("invariant harmonics of degree " + std::to_string(m) + " for " + group.name + ": the projector gives " +
                std::to_string(inv.dimension) + " but the Molien series gives " + std::to_string(h));
  return inv;
}

/// C_n = Re (x1 + i x2)^n and C'_n = Im (x1 + i x2)^n.
inline std::pair<Polynomial<Rational>, Polynomial<Rational>> axial_polynomials(int n) {
  Polynomial<Rational> c(3), s(3);
  for (int k = 0; k <= n; ++k) {
    Monomial m;
    m.exponents[0] = static_cast<std::uint8_t>(n - k);
    m.exponents[1] = static_cast<std::uint8_t>(k);
    const Rational b(detail::binomial(n, k));
    switch (k % 4) {
      case 0: c.add_term(m, b); break;
      case 1: s.add_term(m, b); break;
      case 2: c.add_term(m, -b); break;
      case 3: s.add_term(m, -b); break;
    }
  }
  return {c, s};
}

/// Operating polynomials of degree m for C_n or D_n (n >= 2): products
/// x3^a C_n^b and x3^a C'_n C_n^(b-1) of total degree m; for D_n only those
/// even under (x2, x3) -> (-x2, -x3) are kept.
inline std::vector<Polynomial<Rational>> operating_polynomials(const GroupSpec& spec, int m) {
  if ((spec.family != GroupFamily::Cyclic && spec.family != GroupFamily::Dihedral) || spec.centrosymmetric ||
      spec.n < 2)
    throw Error("operating polynomials are provided for C_n and D_n with n >= 2");
  const int n = spec.n;
  const auto [c, s] = axial_polynomials(n);
  const auto x3 = Polynomial<Rational>::variable(3, 2);
  std::vector<Polynomial<Rational>> out;
  for (int b = 0; n * b <= m; ++b) {
    const int a = m - n * b;
    const auto z = x3.pow(static_cast<unsigned>(a));
    const bool even = a % 2 == 0;
    if (spec.family == GroupFamily::Cyclic || even) out.push_back(z * c.pow(static_cast<unsigned>(b)));
    if (b >= 1 && (spec.family == GroupFamily::Cyclic || !even))
      out.push_back(z * s * c.pow(static_cast<unsigned>(b - 1)));
  }
  return out;
}

/// Invariant harmonics by the Kelvin construction r^{2m+1} Q(d/dx)(1/r) over
/// the operating polynomials; the count must agree with h_m.
inline std::vector<Polynomial<Rational>> kelvin_invariant_harmonics(const GroupSpec& spec, int m) {
  std::vector<Polynomial<Rational>> out;
  for (const auto& q : operating_polynomials(spec, m)) out.push_back(kelvin_harmonicize(q, m));
  const long h = molien_series(build_group(spec), m).h[static_cast<std::size_t>(m)];
  if (static_cast<long>(out.size()) != h)
    throw Error("Kelvin construction produced " + std::to_string(out.size()) + " polynomials, h_m = " +
                std::to_string(h));
  return out;
}

/// Runs `f(std::type_identity<S>{})` with S = Rational when the group and
/// basis allow exact arithmetic, S = double otherwise.
template <class F>
decltype(auto) with_scalar(const PointGroup& group, BasisStyle style, F&& f) {
  if (group.exact && style == BasisStyle::Integer) return f(std::type_identity<Rational>{});
  return f(std::type_identity<double>{});
}

// ---------------------------------------------------------------------------
// HGPT coefficient patterns

/// M^H_{q j p i} = (N_pq)_{ij}.
struct CoefficientRef {
  int p = 0, q = 0, i = 0, j = 0;
  bool operator==(const CoefficientRef&) const = default;
};

inline std::string to_string(const CoefficientRef& r) {
  return "M^H_{" + std::to_string(r.q) + "," + std::to_string(r.j) + "," + std::to_string(r.p) + "," +
         std::to_string(r.i) + "}";
}

/// target = sum of coefficient * independent entry; an empty sum means zero.
struct CoefficientRelation {
  CoefficientRef target;
  std::vector<std::pair<CoefficientRef, double>> terms;

  bool is_zero() const { return terms.empty(); }
};

inline std::string to_string(const CoefficientRelation& rel) {
  std::string s = to_string(rel.target) + " = ";
  if (rel.terms.empty()) return s + "0";
  bool first = true;
  for (const auto& [ref, c] : rel.terms) {
    std::string num = display_number(c);
    const bool neg = num[0] == '-';
    if (neg) num.erase(0, 1);
    s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (num != "1") s += num + "*";
    s += to_string(ref);
    first = false;
  }
  return s;
}

struct CoefficientPattern {
  int p = 0, q = 0;
  BasisStyle style = BasisStyle::Integer;
  std::string group;
  std::vector<CoefficientRef> independent;
  std::vector<CoefficientRelation> dependent;  // every other entry of N_pq, row-major
  std::vector<Eigen::MatrixXd> generators;     // invariant N_pq matrices spanning the pattern

  std::size_t zero_count() const {
    return static_cast<std::size_t>(
        std::count_if(dependent.begin(), dependent.end(), [](const auto& r) { return r.is_zero(); }));
  }
};

/// Reads the independent HGPT coefficients off the reduced row echelon form
/// of the invariant coordinates: pivot coordinates are free, every other
/// coordinate is the printed combination of them. For p = q the lower
/// triangle mirrors the upper one.
template <class S>
CoefficientPattern coefficient_pattern(const InvariantSubspace<S>& inv) {
  const auto& sp = inv.space;
  if (sp.kind != SpaceKind::SymmetricProduct) throw Error("coefficient_pattern needs a symmetric-product space");
  const int p = sp.p, q = sp.q;
  const std::size_t d = sp.dimension();
  CoefficientPattern pat;
  pat.p = p;
  pat.q = q;
  pat.style = sp.style;
  pat.group = inv.group;
  auto ref = [&](IndexPair ij) { return CoefficientRef{p, q, ij.i, ij.j}; };

  Matrix<S> v(inv.coordinates.size(), d);
  for (std::size_t r = 0; r < inv.coordinates.size(); ++r)
    for (std::size_t c = 0; c < d; ++c) v(r, c) = inv.coordinates[r][c];
  const auto ech = rref(v, tolerances().rank);

  // Per coordinate: pivot row or -1, and the relation in terms of pivots.
  std::vector<long> pivot_row(d, -1);
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) pivot_row[ech.pivots[r]] = static_cast<long>(r);
  std::vector<std::vector<std::pair<CoefficientRef, double>>> terms(d);
  for (std::size_t c = 0; c < d; ++c) {
    if (pivot_row[c] >= 0) {
      terms[c] = {{ref(sp.indices[c]), 1.0}};
      continue;
    }
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
      const double x = ScalarTraits<S>::to_double(ech.reduced(r, c));
      if (std::abs(x) > 1e-10) terms[c].push_back({ref(sp.indices[ech.pivots[r]]), x});
    }
  }
  auto coordinate_of = [&](int i, int j) -> std::size_t {
    if (p == q && j < i) std::swap(i, j);
    for (std::size_t k = 0; k < d; ++k)
      if (sp.indices[k] == IndexPair{i, j}) return k;
    throw Error("coefficient_pattern: index pair not in the space");
  };
  for (int i = -p; i <= p; ++i)
    for (int j = -q; j <= q; ++j) {
      const std::size_t k = coordinate_of(i, j);
      const CoefficientRef target{p, q, i, j};
      if (pivot_row[k] >= 0 && sp.indices[k] == IndexPair{i, j}) {
        pat.independent.push_back(target);
      } else {
        pat.dependent.push_back({target, terms[k]});
      }
    }
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * p + 1, 2 * q + 1);
    for (std::size_t c = 0; c < d; ++c) {
      const double x = ScalarTraits<S>::to_double(ech.reduced(r, c));
      const auto [i, j] = sp.indices[c];
      g(i + p, j + q) = x;
      if (p == q) g(j + p, i + q) = x;
    }
    pat.generators.push_back(std::move(g));
  }
  return pat;
}

}  // namespace hgptsym
