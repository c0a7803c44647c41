#pragma once

// Sparse multivariate polynomials in 3 (x) or 6 (x, y) variables with exact
// rational or floating coefficients.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hgptsym/matrix.hpp"
#include "hgptsym/scalar.hpp"

namespace hgptsym {

inline constexpr std::size_t kMaxVariables = 6;

/// Exponent tuple; slots beyond the polynomial's variable count stay zero.
struct Monomial {
  std::array<std::uint8_t, kMaxVariables> exponents{};

  int degree() const {
    return std::accumulate(exponents.begin(), exponents.end(), 0);
  }
  int degree(std::size_t first, std::size_t count) const {
    int d = 0;
    for (std::size_t k = first; k < first + count; ++k) d += exponents[k];
    return d;
  }
  auto operator<=>(const Monomial&) const = default;
};

inline const char* variable_name(std::size_t index) {
  static constexpr const char* names[] = {"x1", "x2", "x3", "y1", "y2", "y3"};
  return names[index];
}

enum class Block { X, Y, Both };

template <class C>
class Polynomial {
 public:
  using Coefficient = C;
  using Terms = std::map<Monomial, C>;

  explicit Polynomial(std::size_t nvars = 3) : nvars_(nvars) {
    if (nvars != 3 && nvars != 6) throw Error("polynomials have 3 or 6 variables");
  }

  static Polynomial constant(std::size_t nvars, const C& c) {
    Polynomial p(nvars);
    p.add_term(Monomial{}, c);
    return p;
  }

  static Polynomial variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw Error("variable index out of range");
    Monomial m;
    m.exponents[index] = 1;
    Polynomial p(nvars);
    p.add_term(m, C(1));
    return p;
  }

  std::size_t variable_count() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  C coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }

  /// Total degree, -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const int d = terms_.begin()->first.degree();
    return std::all_of(terms_.begin(), terms_.end(),
                       [d](const auto& t) { return t.first.degree() == d; });
  }

  void add_term(const Monomial& m, const C& c) {
    if (ScalarTraits<C>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (ScalarTraits<C>::is_zero(it->second)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const C& s) {
    if (ScalarTraits<C>::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= C(-1); }
  friend Polynomial operator*(Polynomial a, const C& s) { return a *= s; }
  friend Polynomial operator*(const C& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_compatible(b);
    Polynomial r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m;
        for (std::size_t k = 0; k < kMaxVariables; ++k)
          m.exponents[k] = static_cast<std::uint8_t>(ma.exponents[k] + mb.exponents[k]);
        r.add_term(m, ca * cb);
      }
    return r;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Polynomial pow(unsigned e) const {
    Polynomial r = constant(nvars_, C(1));
    for (unsigned k = 0; k < e; ++k) r *= *this;
    return r;
  }

  Polynomial derivative(std::size_t var) const {
    if (var >= nvars_) throw Error("derivative: variable index out of range");
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m.exponents[var] == 0) continue;
      Monomial d = m;
      const int e = d.exponents[var]--;
      r.add_term(d, c * C(e));
    }
    return r;
  }

  template <class T>
  T evaluate(std::span<const T> point) const {
    if (point.size() != nvars_) throw Error("evaluate: point dimension mismatch");
    T s = T(0);
    for (const auto& [m, c] : terms_) {
      T t = T(ScalarTraits<C>::to_double(c));
      for (std::size_t k = 0; k < nvars_; ++k)
        for (int e = 0; e < m.exponents[k]; ++e) t *= point[k];
      s += t;
    }
    return s;
  }

  /// Exact evaluation for rational coefficients at rational points.
  C evaluate_exact(std::span<const C> point) const {
    if (point.size() != nvars_) throw Error("evaluate: point dimension mismatch");
    C s = C(0);
    for (const auto& [m, c] : terms_) {
      C t = c;
      for (std::size_t k = 0; k < nvars_; ++k)
        for (int e = 0; e < m.exponents[k]; ++e) t *= point[k];
      s += t;
    }
    return s;
  }

  template <class D>
  Polynomial<D> cast() const {
    Polynomial<D> r(nvars_);
    for (const auto& [m, c] : terms_) {
      if constexpr (std::is_same_v<D, double>) {
        r.add_term(m, ScalarTraits<C>::to_double(c));
      } else {
        r.add_term(m, D(c));
      }
    }
    return r;
  }

  /// Drops floating coefficients with |c| <= tol.
  Polynomial& prune(double tol) {
    std::erase_if(terms_, [tol](const auto& t) { return ScalarTraits<C>::is_zero(t.second, tol); });
    return *this;
  }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [mono, c] : terms_) m = std::max(m, std::abs(ScalarTraits<C>::to_double(c)));
    return m;
  }

 private:
  void check_compatible(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw Error("variable-count mismatch");
  }

  std::size_t nvars_;
  Terms terms_;
};

/// All exponent tuples of total degree `degree` over the variable range
/// [first, first + count), in ascending lexicographic order.
inline std::vector<Monomial> monomials_of_degree(int degree, std::size_t first = 0,
                                                 std::size_t count = 3) {
  std::vector<Monomial> out;
  Monomial cur;
  auto rec = [&](auto&& self, std::size_t k, int left) -> void {
    if (k == first + count - 1) {
      cur.exponents[k] = static_cast<std::uint8_t>(left);
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur.exponents[k] = static_cast<std::uint8_t>(e);
      self(self, k + 1, left - e);
    }
  };
  rec(rec, first, degree);
  std::sort(out.begin(), out.end());
  return out;
}

template <class C>
Polynomial<C> laplacian(const Polynomial<C>& p) {
  if (p.variable_count() != 3) throw Error("laplacian: expected a polynomial in 3 variables");
  Polynomial<C> r(3);
  for (std::size_t k = 0; k < 3; ++k) r += p.derivative(k).derivative(k);
  return r;
}

/// p(Rx) (and/or p(Ry) for product-space polynomials).
template <class C>
Polynomial<C> compose_linear(const Polynomial<C>& p, const Mat3<C>& r, Block which = Block::Both) {
  const std::size_t n = p.variable_count();
  if (n == 3 && which == Block::Y) throw Error("compose_linear: y-block requires 6 variables");
  std::vector<Polynomial<C>> forms;
  forms.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t block = v / 3;
    const bool substitute = which == Block::Both || (which == Block::X && block == 0) ||
                            (which == Block::Y && block == 1);
    if (!substitute) {
      forms.push_back(Polynomial<C>::variable(n, v));
      continue;
    }
    Polynomial<C> f(n);
    const std::size_t i = v % 3;
    for (std::size_t j = 0; j < 3; ++j) {
      Monomial m;
      m.exponents[3 * block + j] = 1;
      f.add_term(m, r[i][j]);
    }
    forms.push_back(std::move(f));
  }
  std::vector<std::vector<Polynomial<C>>> powers(n);
  auto power = [&](std::size_t v, int e) -> const Polynomial<C>& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Polynomial<C>::constant(n, C(1)));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * forms[v]);
    return cache[static_cast<std::size_t>(e)];
  };
  Polynomial<C> out(n);
  for (const auto& [m, c] : p.terms()) {
    Polynomial<C> t = Polynomial<C>::constant(n, c);
    for (std::size_t v = 0; v < n; ++v)
      if (m.exponents[v] > 0) t *= power(v, m.exponents[v]);
    out += t;
  }
  if constexpr (!ScalarTraits<C>::exact) out.prune(1e-14 * std::max(1.0, p.max_abs_coefficient()));
  return out;
}

/// Multiplier that brings `p` to canonical form: integer coefficients with
/// content 1 and a positive first coefficient in ascending lexicographic
/// monomial order.
inline Rational canonical_scale(const Polynomial<Rational>& p) {
  if (p.is_zero()) return Rational(1);
  mpz_class den_lcm = 1;
  for (const auto& [m, c] : p.terms()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  mpz_class content = 0;
  for (const auto& [m, c] : p.terms()) {
    mpz_class v = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  }
  Rational s{den_lcm, content};
  s.canonicalize();
  if (sgn(p.terms().begin()->second) < 0) s = -s;
  return s;
}

/// Floating counterpart: normalizes the first coefficient to 1, then clears
/// small denominators (<= 1000) when every coefficient reconstructs.
inline double canonical_scale(const Polynomial<double>& p) {
  if (p.is_zero()) return 1.0;
  const double first = p.terms().begin()->second;
  double s = 1.0 / first;
  mpz_class den_lcm = 1;
  std::vector<Rational> approx;
  const double tol = 1e-9 * std::max(1.0, p.max_abs_coefficient() * std::abs(s));
  for (const auto& [m, c] : p.terms()) {
    auto q = reconstruct_rational(c * s, 1000, tol);
    if (!q) return s;
    approx.push_back(*q);
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q->get_den_mpz_t());
    if (den_lcm > 1000000) return s;
  }
  mpz_class content = 0;
  for (const auto& q : approx) {
    mpz_class v = q.get_num() * (den_lcm / q.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  }
  Rational f{den_lcm, content};
  f.canonicalize();
  return s * f.get_d();
}

template <class C>
Polynomial<C> canonicalize(const Polynomial<C>& p) {
  return p * canonical_scale(p);
}

/// r^{2m+1} q(d/dx1, d/dx2, d/dx3) (1/r), canonicalized. Each derivative of
/// 1/r has the form P / r^{2k+1} with P homogeneous of degree k, and
/// d/dx_i (P / r^{2k+1}) = (r^2 dP/dx_i - (2k+1) x_i P) / r^{2k+3}.
inline Polynomial<Rational> kelvin_harmonicize(const Polynomial<Rational>& q, int m) {
  if (q.variable_count() != 3) throw Error("kelvin_harmonicize: expected 3 variables");
  if (!q.is_homogeneous() || (!q.is_zero() && q.degree() != m))
    throw Error("kelvin_harmonicize: operand is not homogeneous of degree " + std::to_string(m));
  Polynomial<Rational> r2(3);
  for (std::size_t k = 0; k < 3; ++k) {
    Monomial mono;
    mono.exponents[k] = 2;
    r2.add_term(mono, 1);
  }
  std::map<Monomial, Polynomial<Rational>> cache;
  // Numerator of d^alpha (1/r), built along increasing multi-indices.
  auto numerator = [&](auto&& self, const Monomial& alpha) -> Polynomial<Rational> {
    if (alpha.degree() == 0) return Polynomial<Rational>::constant(3, 1);
    if (auto it = cache.find(alpha); it != cache.end()) return it->second;
    std::size_t var = 0;
    while (alpha.exponents[var] == 0) ++var;
    Monomial prev = alpha;
    --prev.exponents[var];
    const Polynomial<Rational> p = self(self, prev);
    const int k = prev.degree();
    Polynomial<Rational> next =
        r2 * p.derivative(var) - Rational(2 * k + 1) * (Polynomial<Rational>::variable(3, var) * p);
    cache.emplace(alpha, next);
    return next;
  };
  Polynomial<Rational> out(3);
  for (const auto& [alpha, c] : q.terms()) out += c * numerator(numerator, alpha);
  return canonicalize(out);
}

// ---------------------------------------------------------------------------
// Text form: terms `coeff*x1^a*x2^b*...` joined by " + " / " - ".

template <class C>
std::string coefficient_text(const C& c) {
  if constexpr (ScalarTraits<C>::exact) {
    return c.get_str();
  } else {
    return display_number(c);
  }
}

template <class C>
std::string to_string(const Polynomial<C>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    std::string coeff = coefficient_text(c);
    bool negative = !coeff.empty() && coeff[0] == '-';
    if (negative) coeff.erase(0, 1);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool sep = coeff != "1" || m.degree() == 0;
    if (sep) os << coeff;
    for (std::size_t k = 0; k < p.variable_count(); ++k) {
      if (m.exponents[k] == 0) continue;
      if (sep) os << '*';
      sep = true;
      os << variable_name(k);
      if (m.exponents[k] > 1) os << '^' << static_cast<int>(m.exponents[k]);
    }
  }
  return os.str();
}

namespace detail {

// Recursive-descent parser for polynomial expressions: + - * / ^,
// parentheses, implicit multiplication by juxtaposition, integer literals,
// variables x1..x3, y1..y3 (also written x_1). Division is only by constants.
class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, std::size_t nvars) : s_(text), nvars_(nvars) {}

  Polynomial<Rational> parse() {
    auto p = expression();
    skip_space();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Polynomial<Rational> expression() {
    Polynomial<Rational> acc = term();
    for (;;) {
      const char c = peek();
      if (c == '+') {
        ++pos_;
        acc += term();
      } else if (c == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  bool starts_atom(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'x' || c == 'y';
  }

  Polynomial<Rational> term() {
    Polynomial<Rational> acc = factor();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= factor();
      } else if (c == '/') {
        ++pos_;
        Polynomial<Rational> d = factor();
        if (d.degree() > 0 || d.is_zero()) fail("division by a non-constant or zero");
        acc *= Rational(1) / d.coefficient(Monomial{});
      } else if (starts_atom(c)) {
        acc *= factor();
      } else {
        return acc;
      }
    }
  }

  Polynomial<Rational> factor() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (c == '+') {
      ++pos_;
      return factor();
    }
    Polynomial<Rational> base = atom();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }

  Polynomial<Rational> atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      auto p = expression();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Polynomial<Rational>::constant(nvars_, Rational(mpz_class(std::string(s_.substr(start, pos_ - start)))));
    }
    if (c == 'x' || c == 'y') {
      ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '_') ++pos_;
      if (pos_ >= s_.size() || s_[pos_] < '1' || s_[pos_] > '3') fail("expected variable index 1..3");
      const std::size_t idx = static_cast<std::size_t>(s_[pos_] - '1') + (c == 'y' ? 3 : 0);
      ++pos_;
      if (idx >= nvars_) fail("variable not available in a 3-variable polynomial");
      return Polynomial<Rational>::variable(nvars_, idx);
    }
    fail("expected a number, variable or '('");
  }

  std::string_view s_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial<Rational> parse_polynomial(std::string_view text, std::size_t nvars = 3) {
  return detail::PolynomialParser(text, nvars).parse();
}

}  // namespace hgptsym
