#pragma once

// JSON encodings: polynomials as term lists, complex matrices as {re, im},
// HGPT blocks as {p, q, basis_style, entries}, and group elements as arrays
// of rows.

#include "json.hpp"

#include <fstream>
#include <string>
#include <vector>

#include "hgptsym/groups.hpp"
#include "hgptsym/hgpt.hpp"
#include "hgptsym/invariants.hpp"
#include "hgptsym/polynomial.hpp"

namespace hgptsym {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

/// [{exponents: [...], num, den}, ...]; floating coefficients are written as
/// small fractions when one fits within 1e-9, else as {exponents, value}.
template <class C>
json polynomial_to_json(const Polynomial<C>& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    json t;
    std::vector<int> e(m.exponents.begin(), m.exponents.begin() + static_cast<std::ptrdiff_t>(p.variable_count()));
    t["exponents"] = e;
    std::optional<Rational> q;
    if constexpr (ScalarTraits<C>::exact) {
      q = c;
    } else {
      q = reconstruct_rational(c);
    }
    if (q) {
      t["num"] = q->get_num().get_str();
      t["den"] = q->get_den().get_str();
    } else {
      t["value"] = ScalarTraits<C>::to_double(c);
    }
    terms.push_back(std::move(t));
  }
  return terms;
}

inline Polynomial<Rational> polynomial_from_json(const json& j) {
  if (!j.is_array()) throw Error("polynomial JSON must be an array of terms");
  std::size_t nvars = 0;
  Polynomial<Rational> out(3);
  bool first = true;
  for (const auto& t : j) {
    const auto e = t.at("exponents").get<std::vector<int>>();
    if (first) {
      nvars = e.size();
      out = Polynomial<Rational>(nvars);
      first = false;
    }
    if (e.size() != nvars) throw Error("polynomial JSON: inconsistent exponent lengths");
    Monomial m;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] < 0 || e[k] > 255) throw Error("polynomial JSON: exponent out of range");
      m.exponents[k] = static_cast<std::uint8_t>(e[k]);
    }
    auto as_text = [](const json& v) { return v.is_string() ? v.get<std::string>() : std::to_string(v.get<long>()); };
    Rational c{mpz_class(as_text(t.at("num"))), mpz_class(as_text(t.at("den")))};
    c.canonicalize();
    out.add_term(m, c);
  }
  return out;
}

inline json complex_matrix_to_json(const Eigen::MatrixXcd& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ri = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return json{{"re", re}, {"im", im}};
}

inline json real_matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json mat3_to_json(const Mat3<double>& m) {
  json rows = json::array();
  for (const auto& r : m) rows.push_back(json::array({r[0], r[1], r[2]}));
  return rows;
}

inline json hgpt_to_json(const HgptMatrix& n) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < n.entries.rows(); ++r)
    for (Eigen::Index c = 0; c < n.entries.cols(); ++c) entries.push_back(n.entries(r, c));
  return json{{"p", n.p}, {"q", n.q}, {"basis_style", to_string(n.style)}, {"entries", entries}};
}

inline HgptMatrix hgpt_from_json(const json& j) {
  HgptMatrix n;
  n.p = j.at("p").get<int>();
  n.q = j.at("q").get<int>();
  if (n.p < 0 || n.q < 0) throw Error("HGPT block JSON: negative order");
  n.style = parse_basis_style(j.value("basis_style", std::string("orthonormal")));
  const auto e = j.at("entries").get<std::vector<double>>();
  const std::size_t rows = static_cast<std::size_t>(2 * n.p + 1), cols = static_cast<std::size_t>(2 * n.q + 1);
  if (e.size() != rows * cols)
    throw Error("HGPT block (" + std::to_string(n.p) + "," + std::to_string(n.q) + ") needs " +
                std::to_string(rows * cols) + " entries, got " + std::to_string(e.size()));
  n.entries.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      n.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = e[r * cols + c];
  return n;
}

/// Accepts a bare array of blocks or an object {blocks: [...]}.
inline std::vector<HgptMatrix> hgpt_blocks_from_json(const json& j) {
  const json& arr = j.is_object() ? j.at("blocks") : j;
  if (!arr.is_array()) throw Error("HGPT JSON must be an array of blocks or {\"blocks\": [...]}");
  std::vector<HgptMatrix> out;
  for (const auto& b : arr) out.push_back(hgpt_from_json(b));
  return out;
}

inline std::vector<HgptMatrix> read_hgpt_blocks(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(path + ": " + e.what());
  }
  return hgpt_blocks_from_json(j);
}

inline json pattern_to_json(const CoefficientPattern& pat) {
  json indep = json::array();
  for (const auto& r : pat.independent) indep.push_back(to_string(r));
  json rel = json::array();
  for (const auto& d : pat.dependent) rel.push_back(to_string(d));
  return json{{"independent_count", pat.independent.size()},
              {"zero_count", pat.zero_count()},
              {"independent", indep},
              {"relations", rel}};
}

/// Document header shared by every CLI output.
inline json document(const std::string& command, json inputs) {
  return json{{"schema_version", kSchemaVersion},
              {"tool_version", kToolVersion},
              {"command", command},
              {"inputs", std::move(inputs)}};
}

}  // namespace hgptsym
