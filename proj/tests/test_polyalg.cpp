#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace hgptsym;
using oracle::P;

namespace {

Mat3<Rational> quarter_turn_z() { return {{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}}; }

Polynomial<Rational> random_poly(std::mt19937& rng, std::size_t nvars, int degree, int terms) {
  std::uniform_int_distribution<int> coeff(-9, 9), var(0, static_cast<int>(nvars) - 1);
  Polynomial<Rational> p(nvars);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    for (int k = 0; k < degree; ++k) ++m.exponents[static_cast<std::size_t>(var(rng))];
    p.add_term(m, Rational(coeff(rng)));
  }
  return p;
}

}  // namespace

TEST(Laplacian, Examples) {
  EXPECT_TRUE(laplacian(P("x1^2 - x2^2")).is_zero());
  EXPECT_EQ(laplacian(P("x1^2")), P("2"));
  EXPECT_TRUE(laplacian(P("3 x1^2 x2 x3 - x2 x3^3")).is_zero());
}

TEST(Laplacian, MatchesTermwiseOracle) {
  std::mt19937 rng(11);
  for (int k = 0; k < 50; ++k) {
    const auto p = random_poly(rng, 3, 2 + k % 5, 6);
    const auto lib = laplacian(p);
    const auto ref = oracle::laplacian_terms(p);
    ASSERT_EQ(lib.size(), ref.size());
    for (const auto& [key, c] : ref) {
      Monomial m;
      for (std::size_t i = 0; i < 3; ++i) m.exponents[i] = static_cast<std::uint8_t>(key[i]);
      EXPECT_EQ(lib.coefficient(m), c);
    }
  }
}

TEST(Laplacian, RejectsSixVariables) { EXPECT_THROW(laplacian(P("x1 y1", 6)), Error); }

TEST(Kelvin, Examples) {
  const auto q2 = kelvin_harmonicize(P("x3^2"), 2);
  EXPECT_EQ(q2, P("2 x3^2 - x1^2 - x2^2"));
  // 24 x3^4 + 9 (x1^4 + x2^4) - 72 (...) + 18 x1^2 x2^2 divided by its content 3.
  EXPECT_EQ(kelvin_harmonicize(P("x3^4"), 4),
            P("8 x3^4 + 3 (x1^4 + x2^4) - 24 (x1^2 x3^2 + x2^2 x3^2) + 6 x1^2 x2^2"));
  EXPECT_EQ(kelvin_harmonicize(P("1"), 0), P("1"));
}

TEST(Kelvin, OutputIsHomogeneousHarmonicAndCanonical) {
  for (int m = 0; m <= 6; ++m)
    for (const auto& mono : monomials_of_degree(m)) {
      Polynomial<Rational> q(3);
      q.add_term(mono, 1);
      const auto h = kelvin_harmonicize(q, m);
      ASSERT_FALSE(h.is_zero());
      EXPECT_TRUE(h.is_homogeneous());
      EXPECT_EQ(h.degree(), m);
      EXPECT_TRUE(oracle::is_harmonic(h));
      EXPECT_GT(sgn(h.terms().begin()->second), 0);
      mpz_class content = 0;
      for (const auto& [mm, c] : h.terms()) {
        ASSERT_EQ(c.get_den(), 1);
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_num_mpz_t());
      }
      EXPECT_EQ(content, 1);
    }
}

TEST(Kelvin, HarmonicInputIsFixedUpToScale) {
  // A harmonic Q of degree m maps to a multiple of itself.
  const auto q = P("x1^4 - 6 x1^2 x2^2 + x2^4");
  EXPECT_EQ(kelvin_harmonicize(q, 4), canonicalize(q));
}

TEST(Kelvin, RejectsInhomogeneousOperand) {
  EXPECT_THROW(kelvin_harmonicize(P("x1^2 + x3"), 2), Error);
  EXPECT_THROW(kelvin_harmonicize(P("x1^2"), 3), Error);
}

TEST(ComposeLinear, Examples) {
  const auto r = quarter_turn_z();
  EXPECT_EQ(compose_linear(P("x3 y3", 6), r), P("x3 y3", 6));
  EXPECT_EQ(compose_linear(P("x1"), mat3_identity<Rational>()), P("x1"));
  // (R x)_1 = -x2, so x1 y1 -> x2 y2.
  EXPECT_EQ(compose_linear(P("x1 y1", 6), r), P("x2 y2", 6));
}

TEST(ComposeLinear, MatchesDirectSubstitution) {
  std::mt19937 rng(3);
  const auto g = make_group("O");
  for (int k = 0; k < 20; ++k) {
    const auto p = random_poly(rng, 6, 4, 5);
    const auto& r = g.elements[static_cast<std::size_t>(k) % g.order()];
    const auto composed = compose_linear(p.cast<double>(), r);
    for (int s = 0; s < 5; ++s) {
      const auto x = oracle::random_point(rng, 0.5, 2.0), y = oracle::random_point(rng, 0.5, 2.0);
      EXPECT_NEAR(oracle::eval6(composed, x, y), oracle::eval6(p, apply(r, x), apply(r, y)), 1e-10);
    }
  }
}

TEST(ComposeLinear, BlocksActSeparately) {
  const auto r = quarter_turn_z();
  EXPECT_EQ(compose_linear(P("x1 y1", 6), r, Block::X), P("-x2 y1", 6));
  EXPECT_EQ(compose_linear(P("x1 y1", 6), r, Block::Y), P("-x1 y2", 6));
  EXPECT_THROW(compose_linear(P("x1"), r, Block::Y), Error);
}

TEST(ComposeLinear, Homomorphism) {
  std::mt19937 rng(5);
  const auto g = make_group("O").elements_as<Rational>();
  for (int k = 0; k < 30; ++k) {
    const auto p = random_poly(rng, 6, 3, 4);
    const auto& r1 = g[static_cast<std::size_t>(k) % g.size()];
    const auto& r2 = g[static_cast<std::size_t>(7 * k + 3) % g.size()];
    // (p o R2) o R1 evaluates p at R2 R1 x.
    EXPECT_EQ(compose_linear(p, r2 * r1), compose_linear(compose_linear(p, r2), r1));
  }
  for (int k = 0; k < 10; ++k) {
    const auto p = random_poly(rng, 3, 4, 5).cast<double>();
    const auto r1 = oracle::random_rotation(rng), r2 = oracle::random_rotation(rng);
    const auto a = compose_linear(p, r2 * r1), b = compose_linear(compose_linear(p, r2), r1);
    for (int s = 0; s < 5; ++s) {
      const auto x = oracle::random_point(rng, 0.5, 2.0);
      EXPECT_NEAR(a.evaluate<double>(std::span<const double>(x)), b.evaluate<double>(std::span<const double>(x)), 1e-9);
    }
  }
}

TEST(Arithmetic, ExactIdentities) {
  std::mt19937 rng(17);
  const auto one = Polynomial<Rational>::constant(6, 1);
  for (int k = 0; k < 30; ++k) {
    const auto p = random_poly(rng, 6, 1 + k % 4, 5);
    const auto q = random_poly(rng, 6, 1 + k % 3, 4);
    EXPECT_EQ((p + q) - q, p);
    EXPECT_EQ(p * one, p);
    if (!p.is_zero() && !q.is_zero()) EXPECT_EQ((p * q).degree(), p.degree() + q.degree());
  }
}

TEST(Arithmetic, NoZeroCoefficientsStored) {
  auto p = P("x1 + x2");
  p -= P("x1");
  EXPECT_EQ(p.size(), 1u);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(P("x1 - x1").size(), 0u);
}

TEST(Arithmetic, ExactEvaluationAtRationalPoints) {
  const auto p = P("1/3 x1^2 - x2 x3");
  const std::array<Rational, 3> pt{make_rational(1, 2), make_rational(2, 3), make_rational(-3, 4)};
  EXPECT_EQ(p.evaluate_exact(std::span<const Rational>(pt)), make_rational(1, 12) + make_rational(1, 2));
}

TEST(Arithmetic, VariableCountsAreChecked) {
  EXPECT_THROW(Polynomial<Rational>(4), Error);
  EXPECT_THROW(P("x1") + P("x1", 6), Error);
  EXPECT_THROW(P("y1"), Error);
}

TEST(TextForm, RoundTrip) {
  std::mt19937 rng(23);
  for (int k = 0; k < 30; ++k) {
    auto p = random_poly(rng, 6, 1 + k % 5, 6);
    p *= make_rational(1, 1 + k % 7);
    EXPECT_EQ(parse_polynomial(to_string(p), 6), p) << to_string(p);
  }
}

TEST(TextForm, Layout) {
  EXPECT_EQ(to_string(P("x1^2 - 1/2 x2 y3", 6)), "-1/2*x2*y3 + x1^2");
  EXPECT_EQ(to_string(Polynomial<Rational>(3)), "0");
  EXPECT_EQ(to_string(P("-x3")), "-x3");
}

TEST(TextForm, ParseErrors) {
  EXPECT_THROW(parse_polynomial("x4"), Error);
  EXPECT_THROW(parse_polynomial("(x1 + x2"), Error);
  EXPECT_THROW(parse_polynomial("x1 / x2"), Error);
  EXPECT_THROW(parse_polynomial("x1 ^"), Error);
  EXPECT_THROW(parse_polynomial("x1 $"), Error);
}

TEST(TextForm, JsonRoundTrip) {
  const auto p = P("3/4 x1 y2 - x3^2 y1 + 5", 6);
  const auto j = polynomial_to_json(p);
  EXPECT_EQ(j.size(), 3u);
  EXPECT_EQ(polynomial_from_json(j), p);
  EXPECT_EQ(j[0]["exponents"].size(), 6u);
}

TEST(Canonicalize, ContentAndSign) {
  // x2 precedes x1 in ascending lexicographic order, so x2 gets the positive sign.
  EXPECT_EQ(canonicalize(P("-4 x1 + 6 x2")), P("-2 x1 + 3 x2"));
  EXPECT_EQ(canonicalize(P("1/2 x1 + 1/3 x2")), P("3 x1 + 2 x2"));
  const auto d = canonicalize(P("-1/2 x1 + 1/3 x2").cast<double>());
  EXPECT_NEAR(d.coefficient(P("x1").terms().begin()->first), -3.0, 1e-12);
  EXPECT_NEAR(d.coefficient(P("x2").terms().begin()->first), 2.0, 1e-12);
}

TEST(Monomials, CountsAndOrder) {
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(monomials_of_degree(n).size(), static_cast<std::size_t>((n + 1) * (n + 2) / 2));
  const auto m = monomials_of_degree(3);
  EXPECT_TRUE(std::is_sorted(m.begin(), m.end()));
}
