#pragma once

// HGPT coefficient blocks N_pq: conversion to and from CGPT blocks and GPT
// coefficients, the scaling and rotation laws, projection onto a symmetry
// pattern, and the truncated measurement model V_sr.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "hgptsym/harmonics.hpp"
#include "hgptsym/invariants.hpp"

namespace hgptsym {

/// (N_pq)_{ij} = M^H_{q j p i}; row i + p, column j + q.
struct HgptMatrix {
  int p = 0;
  int q = 0;
  BasisStyle style = BasisStyle::Orthonormal;
  Eigen::MatrixXd entries;

  static HgptMatrix zero(int p, int q, BasisStyle style) {
    return {p, q, style, Eigen::MatrixXd::Zero(2 * p + 1, 2 * q + 1)};
  }
};

/// (M_pq)_{mn} = M^C_{q n p m}; row m + p, column n + q.
struct CgptMatrix {
  int p = 0;
  int q = 0;
  Eigen::MatrixXcd entries;
};

/// GPT values M_{alpha beta} for |alpha| = p, |beta| = q.
struct GptCoefficients {
  int p = 0;
  int q = 0;
  std::map<std::pair<Monomial, Monomial>, double> values;
};

struct HgptConversion {
  HgptMatrix matrix;
  double imaginary_residual = 0.0;  // max |Im| dropped when taking the real part
};

namespace detail {

inline void check_block(int p, int q, Eigen::Index rows, Eigen::Index cols) {
  if (p < 0 || q < 0) throw Error("negative HGPT order");
  if (rows != 2 * p + 1 || cols != 2 * q + 1)
    throw Error("block (" + std::to_string(p) + "," + std::to_string(q) + ") must be " + std::to_string(2 * p + 1) +
                "x" + std::to_string(2 * q + 1));
}

inline void check_basis_change(const BasisChange& a, int degree, const char* what) {
  if (a.degree != degree)
    throw Error(std::string(what) + ": basis change has degree " + std::to_string(a.degree) + ", expected " +
                std::to_string(degree));
}

}  // namespace detail

/// M^H_{qjpi} = sum_{m,n} a_{im} M^C_{qnpm} conj(a_{jn}), i.e. N = B M B^*
/// with B_{im} = a_{im}.
inline HgptConversion hgpt_from_cgpt(const CgptMatrix& m, const BasisChange& ap, const BasisChange& aq) {
  detail::check_block(m.p, m.q, m.entries.rows(), m.entries.cols());
  detail::check_basis_change(ap, m.p, "hgpt_from_cgpt");
  detail::check_basis_change(aq, m.q, "hgpt_from_cgpt");
  if (ap.style != aq.style) throw Error("hgpt_from_cgpt: basis changes use different real bases");
  const Eigen::MatrixXcd n = ap.coefficients * m.entries * aq.coefficients.adjoint();
  HgptConversion out;
  out.matrix = {m.p, m.q, ap.style, n.real()};
  out.imaginary_residual = n.imag().cwiseAbs().maxCoeff();
  return out;
}

/// Inverse of hgpt_from_cgpt: M = B^{-1} N (B^*)^{-1}, which is B^* N B for
/// the orthonormal real basis.
inline CgptMatrix cgpt_from_hgpt(const HgptMatrix& n, const BasisChange& ap, const BasisChange& aq) {
  detail::check_block(n.p, n.q, n.entries.rows(), n.entries.cols());
  detail::check_basis_change(ap, n.p, "cgpt_from_hgpt");
  detail::check_basis_change(aq, n.q, "cgpt_from_hgpt");
  if (ap.style != n.style || aq.style != n.style) throw Error("cgpt_from_hgpt: basis style mismatch");
  const Eigen::MatrixXcd bp_inv = ap.coefficients.inverse();
  const Eigen::MatrixXcd bq_inv = aq.coefficients.inverse();
  return {n.p, n.q, bp_inv * n.entries.cast<std::complex<double>>() * bq_inv.adjoint()};
}

/// M^C_{qnpm} = sum_{alpha, beta} conj(a^MH_{alpha m}) M_{alpha beta} a^MH_{beta n} / ((2p+1)(2q+1)),
/// followed by hgpt_from_cgpt.
inline HgptConversion hgpt_from_gpt(const GptCoefficients& g, BasisStyle style) {
  const int p = g.p, q = g.q;
  const auto alphas = monomials_of_degree(p);
  const auto betas = monomials_of_degree(q);
  Eigen::MatrixXd gm(static_cast<Eigen::Index>(alphas.size()), static_cast<Eigen::Index>(betas.size()));
  for (std::size_t a = 0; a < alphas.size(); ++a)
    for (std::size_t b = 0; b < betas.size(); ++b) {
      const auto it = g.values.find({alphas[a], betas[b]});
      if (it == g.values.end()) throw Error("hgpt_from_gpt: missing GPT entry for a multi-index pair");
      gm(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = it->second;
    }
  auto mh = [](int n, const std::vector<Monomial>& monos) {
    const auto hs = complex_solid_harmonics(n);
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(monos.size()), static_cast<Eigen::Index>(hs.size()));
    for (std::size_t r = 0; r < monos.size(); ++r)
      for (std::size_t m = 0; m < hs.size(); ++m)
        a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(m)) = hs[m].monomial_coefficient(monos[r]);
    return a;
  };
  const Eigen::MatrixXcd ap = mh(p, alphas);
  const Eigen::MatrixXcd aq = mh(q, betas);
  const double factor = 1.0 / ((2.0 * p + 1.0) * (2.0 * q + 1.0));
  CgptMatrix c{p, q, factor * (ap.adjoint() * gm.cast<std::complex<double>>() * aq)};
  return hgpt_from_cgpt(c, basis_change(p, style), basis_change(q, style));
}

/// N_pq(sB) = s^{p+q+1} N_pq(B).
inline HgptMatrix scale(const HgptMatrix& n, double s) {
  if (!(s > 0.0)) throw Error("scale factor must be positive");
  HgptMatrix out = n;
  out.entries *= std::pow(s, n.p + n.q + 1);
  return out;
}

/// Real-basis representation of R on degree-p harmonics (row i holds the
/// coordinates of I_p^i(Rx)).
inline Eigen::MatrixXd harmonic_action(int p, BasisStyle style, const Mat3<double>& r) {
  return action_matrix(harmonic_space<double>(p, style), r).to_eigen();
}

/// N_pq of the rotated object R(B): D_p^T N D_q with D = pi(R^T), so that
/// V_sr(rotate(N, R), x_r, x_s) = V_sr(N, R^T x_r, R^T x_s).
inline HgptMatrix rotate(const HgptMatrix& n, const Mat3<double>& r) {
  detail::check_block(n.p, n.q, n.entries.rows(), n.entries.cols());
  const Mat3<double> rt = transpose(r);
  const Eigen::MatrixXd dp = harmonic_action(n.p, n.style, rt);
  const Eigen::MatrixXd dq = n.q == n.p ? dp : harmonic_action(n.q, n.style, rt);
  HgptMatrix out = n;
  out.entries = dp.transpose() * n.entries * dq;
  return out;
}

/// V_sr = sum over blocks with p, q <= nmax of
/// I_p(x_r) N_pq I_q(x_s)^T / (|x_r|^{2p+1} |x_s|^{2q+1}).
inline double forward_voltage(const std::vector<HgptMatrix>& blocks, const std::array<double, 3>& xr,
                              const std::array<double, 3>& xs, int nmax) {
  const double rr = std::hypot(xr[0], xr[1], xr[2]);
  const double rs = std::hypot(xs[0], xs[1], xs[2]);
  if (rr == 0.0 || rs == 0.0) throw Error("forward_voltage: source and receiver must be away from the origin");
  std::map<std::pair<int, BasisStyle>, Eigen::VectorXd> cache_r, cache_s;
  auto values = [](auto& cache, int n, BasisStyle style, const std::array<double, 3>& x) -> const Eigen::VectorXd& {
    auto it = cache.find({n, style});
    if (it == cache.end()) {
      const auto v = real_basis(n, style).evaluate(x);
      it = cache.emplace(std::pair{n, style}, Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()))).first;
    }
    return it->second;
  };
  double v = 0.0;
  for (const auto& b : blocks) {
    detail::check_block(b.p, b.q, b.entries.rows(), b.entries.cols());
    if (b.p > nmax || b.q > nmax) continue;
    const auto& ir = values(cache_r, b.p, b.style, xr);
    const auto& is = values(cache_s, b.q, b.style, xs);
    v += ir.dot(b.entries * is) / (std::pow(rr, 2 * b.p + 1) * std::pow(rs, 2 * b.q + 1));
  }
  return v;
}

struct PatternProjection {
  HgptMatrix projected;
  double residual = 0.0;  // Frobenius distance from N to the pattern subspace
};

/// Orthogonal Frobenius projection of N_pq onto the matrices allowed by the
/// pattern.
inline PatternProjection apply_pattern(const HgptMatrix& n, const CoefficientPattern& pattern) {
  detail::check_block(n.p, n.q, n.entries.rows(), n.entries.cols());
  if (n.p != pattern.p || n.q != pattern.q)
    throw Error("pattern is for (" + std::to_string(pattern.p) + "," + std::to_string(pattern.q) + "), block is (" +
                std::to_string(n.p) + "," + std::to_string(n.q) + ")");
  if (n.style != pattern.style)
    throw Error("pattern uses the " + to_string(pattern.style) + " basis, block uses the " + to_string(n.style) +
                " basis");
  const Eigen::Index len = n.entries.size();
  PatternProjection out;
  out.projected = n;
  if (pattern.generators.empty()) {
    out.projected.entries.setZero();
    out.residual = n.entries.norm();
    return out;
  }
  Eigen::MatrixXd g(len, static_cast<Eigen::Index>(pattern.generators.size()));
  for (std::size_t k = 0; k < pattern.generators.size(); ++k)
    g.col(static_cast<Eigen::Index>(k)) = pattern.generators[k].reshaped();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  const Eigen::MatrixXd qmat = qr.householderQ() * Eigen::MatrixXd::Identity(len, g.cols());
  const Eigen::VectorXd v = n.entries.reshaped();
  const Eigen::VectorXd proj = qmat * (qmat.transpose() * v);
  out.projected.entries = proj.reshaped(n.entries.rows(), n.entries.cols());
  out.residual = (v - proj).norm();
  return out;
}

/// Block matrix N over orders 1..nmax (rows and columns offset by p^2 - 1);
/// missing blocks are zero.
inline Eigen::MatrixXd assemble_blocks(const std::vector<HgptMatrix>& blocks, int nmax) {
  const Eigen::Index size = (nmax + 1) * (nmax + 1) - 1;
  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(size, size);
  for (const auto& b : blocks) {
    if (b.p < 1 || b.q < 1 || b.p > nmax || b.q > nmax) continue;
    full.block(b.p * b.p - 1, b.q * b.q - 1, 2 * b.p + 1, 2 * b.q + 1) = b.entries;
  }
  return full;
}

/// Independent GPT coefficients M_{alpha beta} with |alpha| = p, |beta| = q
/// in the monomial basis.
inline long gpt_coefficient_count(int p, int q) {
  return static_cast<long>(p + 1) * (p + 2) * (q + 1) * (q + 2) / 4;
}

/// Independent entries of a symmetric HGPT (or CGPT) block without object
/// symmetry: (2p+1)(2q+1), or (2p+1)(p+1) when p = q.
inline long symmetric_hgpt_count(int p, int q) {
  return p == q ? static_cast<long>(2 * p + 1) * (p + 1) : static_cast<long>(2 * p + 1) * (2 * q + 1);
}

}  // namespace hgptsym
