#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace hgptsym;
using oracle::P;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::array<double, 3>> sample_points(std::uint32_t seed, int count) {
  std::mt19937 rng(seed);
  std::vector<std::array<double, 3>> pts;
  for (int k = 0; k < count; ++k) pts.push_back(oracle::random_point(rng, 0.3, 2.0));
  return pts;
}

}  // namespace

TEST(RealBasis, DegreeOneAndZero) {
  for (const auto style : {BasisStyle::Integer, BasisStyle::Orthonormal}) {
    const auto b1 = real_basis(1, style);
    ASSERT_EQ(b1.size(), 3u);
    EXPECT_EQ(b1.polynomials[0], P("x1"));
    EXPECT_EQ(b1.polynomials[1], P("x2"));
    EXPECT_EQ(b1.polynomials[2], P("x3"));
    const auto b0 = real_basis(0, style);
    ASSERT_EQ(b0.size(), 1u);
    EXPECT_EQ(b0.polynomials[0], P("1"));
  }
  EXPECT_DOUBLE_EQ(real_basis(0, BasisStyle::Orthonormal).scales[0], 1.0 / std::sqrt(4.0 * kPi));
  EXPECT_DOUBLE_EQ(real_basis(1, BasisStyle::Orthonormal).scales[2], std::sqrt(3.0 / (4.0 * kPi)));
}

TEST(RealBasis, OrthonormalDegreeTwoEntry) {
  // x1 x2 with the constant sqrt(15 / (4 pi)).
  const auto b = real_basis(2, BasisStyle::Orthonormal);
  EXPECT_EQ(b.polynomials[0], P("x1 x2"));
  EXPECT_NEAR(b.scales[0], std::sqrt(15.0 / (4.0 * kPi)), 1e-14);
  EXPECT_EQ(b.polynomials[4], P("x1^2 - x3^2"));
  EXPECT_NEAR(b.scales[4], 0.5 * std::sqrt(15.0 / (4.0 * kPi)), 1e-14);
}

TEST(RealBasis, HarmonicHomogeneousIndependent) {
  for (const auto style : {BasisStyle::Integer, BasisStyle::Orthonormal})
    for (int n = 0; n <= 8; ++n) {
      const auto b = real_basis(n, style);
      ASSERT_EQ(b.size(), static_cast<std::size_t>(2 * n + 1));
      for (const auto& p : b.polynomials) {
        EXPECT_TRUE(oracle::is_harmonic(p)) << n << ": " << to_string(p);
        EXPECT_TRUE(p.is_homogeneous());
        EXPECT_EQ(p.degree(), n);
      }
      EXPECT_EQ(oracle::column_rank(oracle::stacked_coefficients(b.polynomials, std::vector<Polynomial<Rational>>{})),
                2 * n + 1);
    }
}

TEST(RealBasis, OrthonormalOnSphereByQuadrature) {
  for (int n = 0; n <= 6; ++n) {
    const auto b = real_basis(n, BasisStyle::Orthonormal);
    Eigen::MatrixXd gram(2 * n + 1, 2 * n + 1);
    for (int i = 0; i < 2 * n + 1; ++i)
      for (int j = 0; j < 2 * n + 1; ++j)
        gram(i, j) = oracle::sphere_integral([&](const std::array<double, 3>& x) {
          const auto v = b.evaluate(x);
          return v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
        });
    EXPECT_LT((gram - Eigen::MatrixXd::Identity(2 * n + 1, 2 * n + 1)).cwiseAbs().maxCoeff(), 1e-12) << n;
  }
}

TEST(RealBasis, RejectsNegativeDegree) { EXPECT_THROW(real_basis(-1, BasisStyle::Integer), Error); }

TEST(SphereIntegrals, ClosedFormMatchesQuadrature) {
  for (const char* text : {"1", "x1^2", "x1^2 x2^4", "x3^6 - x1 x2", "x1^2 x2^2 x3^2"}) {
    const auto p = P(text);
    const double q = oracle::sphere_integral(
        [&](const std::array<double, 3>& x) { return p.evaluate<double>(std::span<const double>(x)); });
    EXPECT_NEAR(kPi * sphere_inner_product_over_pi(p, P("1")).get_d(), q, 1e-12) << text;
  }
  EXPECT_EQ(sphere_inner_product_over_pi(P("1"), P("1")), 4);
}

TEST(ComplexHarmonics, LowOrders) {
  const auto h0 = complex_solid_harmonics(0);
  ASSERT_EQ(h0.size(), 1u);
  EXPECT_NEAR(h0[0].evaluate({0.3, -0.2, 0.9}).real(), 1.0 / (2.0 * std::sqrt(kPi)), 1e-15);
  const auto h1 = complex_solid_harmonics(1);
  ASSERT_EQ(h1.size(), 3u);
  const std::array<double, 3> x{0.3, -0.7, 1.1};
  EXPECT_NEAR(std::abs(h1[1].evaluate(x) - std::sqrt(3.0 / (4.0 * kPi)) * x[2]), 0.0, 1e-15);
  EXPECT_EQ(h1[1].re, P("x3"));
  EXPECT_TRUE(h1[1].im.is_zero());
}

TEST(ComplexHarmonics, DegreeTwoSectoralSpan) {
  const auto h2 = complex_solid_harmonics(2);
  // H_2^{+-2} are multiples of (x1 +- i x2)^2.
  for (int idx : {0, 4}) {
    EXPECT_TRUE(oracle::spans_equal(std::vector{h2[static_cast<std::size_t>(idx)].re}, std::vector{P("x1^2 - x2^2")}));
    EXPECT_TRUE(oracle::spans_equal(std::vector{h2[static_cast<std::size_t>(idx)].im}, std::vector{P("x1 x2")}));
  }
}

TEST(ComplexHarmonics, MatchLegendreRecurrence) {
  const auto pts = sample_points(9, 12);
  for (int n = 0; n <= 8; ++n) {
    const auto hs = complex_solid_harmonics(n);
    ASSERT_EQ(hs.size(), static_cast<std::size_t>(2 * n + 1));
    for (int m = -n; m <= n; ++m)
      for (const auto& x : pts) {
        const auto lib = hs[static_cast<std::size_t>(m + n)].evaluate(x);
        const auto ref = oracle::solid_harmonic(n, m, x);
        EXPECT_LT(std::abs(lib - ref), 1e-11 * std::max(1.0, std::abs(ref))) << n << " " << m;
      }
  }
}

TEST(ComplexHarmonics, ConjugationSymmetry) {
  const auto pts = sample_points(4, 5);
  for (int n = 1; n <= 6; ++n) {
    const auto hs = complex_solid_harmonics(n);
    for (int m = 1; m <= n; ++m)
      for (const auto& x : pts) {
        const double sign = m % 2 ? -1.0 : 1.0;
        const auto plus = hs[static_cast<std::size_t>(n + m)].evaluate(x);
        const auto minus = hs[static_cast<std::size_t>(n - m)].evaluate(x);
        EXPECT_LT(std::abs(minus - sign * std::conj(plus)), 1e-12);
      }
  }
}

TEST(ComplexHarmonics, RealAndImaginaryPartsHarmonic) {
  for (int n = 0; n <= 8; ++n)
    for (const auto& h : complex_solid_harmonics(n)) {
      EXPECT_TRUE(oracle::is_harmonic(h.re));
      EXPECT_TRUE(oracle::is_harmonic(h.im));
    }
}

TEST(BasisChange, DegreeZero) {
  // H_0^0 = 1 / (2 sqrt(pi)), which is the orthonormal I_0^0 itself.
  const auto ortho = basis_change(0, BasisStyle::Orthonormal);
  ASSERT_EQ(ortho.coefficients.rows(), 1);
  EXPECT_LT(std::abs(ortho.coefficients(0, 0) - 1.0), 1e-14);
  const auto integer = basis_change(0, BasisStyle::Integer);
  EXPECT_LT(std::abs(integer.coefficients(0, 0) - 0.5 / std::sqrt(kPi)), 1e-14);
}

TEST(BasisChange, OrthonormalIsUnitary) {
  for (int n = 0; n <= 8; ++n) {
    const auto a = basis_change(n, BasisStyle::Orthonormal).matrix();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2 * n + 1, 2 * n + 1);
    EXPECT_LT((a.adjoint() * a - id).cwiseAbs().maxCoeff(), 1e-12) << n;
  }
}

TEST(BasisChange, ExpansionReproducesHarmonics) {
  const auto pts = sample_points(21, 6);
  for (const auto style : {BasisStyle::Integer, BasisStyle::Orthonormal})
    for (int n = 0; n <= 6; ++n) {
      const auto bc = basis_change(n, style);
      const auto basis = real_basis(n, style);
      const auto hs = complex_solid_harmonics(n);
      for (const auto& x : pts) {
        const auto iv = basis.evaluate(x);
        for (int mi = 0; mi < 2 * n + 1; ++mi) {
          std::complex<double> s = 0.0;
          for (int l = 0; l < 2 * n + 1; ++l) s += bc.coefficients(l, mi) * iv[static_cast<std::size_t>(l)];
          const auto ref = oracle::solid_harmonic(n, mi - n, x);
          EXPECT_LT(std::abs(s - ref), 1e-11 * std::max(1.0, std::abs(ref)));
        }
      }
    }
}

TEST(BasisChange, RealBasisFromConjugateCoefficients) {
  const auto pts = sample_points(33, 6);
  for (int n = 1; n <= 5; ++n) {
    const auto bc = basis_change(n, BasisStyle::Orthonormal);
    const auto basis = real_basis(n, BasisStyle::Orthonormal);
    for (const auto& x : pts) {
      const auto iv = basis.evaluate(x);
      for (int l = 0; l < 2 * n + 1; ++l) {
        std::complex<double> s = 0.0;
        for (int m = -n; m <= n; ++m) s += std::conj(bc.coefficients(l, m + n)) * oracle::solid_harmonic(n, m, x);
        EXPECT_LT(std::abs(s - iv[static_cast<std::size_t>(l)]), 1e-11);
      }
    }
  }
}

TEST(GreenExpansion, OriginSource) {
  EXPECT_NEAR(green_expansion({2, 0, 0}, {0, 0, 0}, 0), 1.0 / (8.0 * kPi), 1e-15);
  EXPECT_NEAR(green_expansion({0, 0, 2}, {0, 0, 0}, 6), 1.0 / (8.0 * kPi), 1e-15);
}

TEST(GreenExpansion, ConvergesToClosedForm) {
  const std::array<double, 3> x{0, 0, 2}, xp{0, 0, 0.5};
  EXPECT_LT(std::abs(green_expansion(x, xp, 12) - oracle::green_closed_form(x, xp)), 1e-8);
  std::mt19937 rng(2);
  for (int k = 0; k < 10; ++k) {
    const auto a = oracle::random_point(rng, 2.0, 2.5), b = oracle::random_point(rng, 0.2, 0.5);
    EXPECT_LT(std::abs(green_expansion(a, b, 16) - oracle::green_closed_form(a, b)), 1e-9);
  }
}

TEST(GreenExpansion, TruncationErrorDecays) {
  // Along a common axis the n-th term is (1/4pi) r'^n / r^{n+1}, so the
  // error ratio between consecutive truncations is r'/r = 1/4.
  const std::array<double, 3> x{0, 0, 2}, xp{0, 0, 0.5};
  const double exact = oracle::green_closed_form(x, xp);
  double prev = std::abs(green_expansion(x, xp, 0) - exact);
  for (int n = 1; n <= 10; ++n) {
    const double err = std::abs(green_expansion(x, xp, n) - exact);
    EXPECT_LT(err, prev);
    EXPECT_NEAR(err / prev, 0.25, 1e-6);
    prev = err;
  }
}

TEST(GreenExpansion, DomainErrors) {
  EXPECT_THROW(green_expansion({1, 0, 0}, {0, 2, 0}, 4), Error);
  EXPECT_THROW(green_expansion({1, 0, 0}, {0, 1, 0}, 4), Error);
  EXPECT_THROW(green_expansion({0, 0, 0}, {0, 0, 0}, 4), Error);
  EXPECT_THROW(green_expansion({2, 0, 0}, {0, 1, 0}, -1), Error);
}
