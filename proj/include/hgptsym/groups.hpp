#pragma once

// Finite orthogonal point groups: the rotation groups C_n, D_n, T, O, I,
// their centrosymmetric extensions (adjoin J = -I), and mixed groups
// G1 u J (G2 \ G1) built from an index-2 subgroup.
//
// Axis conventions: the n-fold axis of C_n and D_n is x3 and one 2-fold axis
// of D_n is x1; the 2-fold axes of T are the coordinate axes; the cube of O
// has faces parallel to the coordinate planes; the icosahedron of I has the
// coordinate axes through midpoints of opposite edges, with the edges cut by
// x1 parallel to x2 (vertices: cyclic permutations of (0, +-phi, +-1)).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hgptsym/matrix.hpp"
#include "hgptsym/scalar.hpp"

namespace hgptsym {

enum class GroupFamily { Cyclic, Dihedral, Tetrahedral, Octahedral, Icosahedral };

/// 1 = rotations only, 2 = rotations plus central inversion, 3 = mixed.
enum class GroupType { Rotational = 1, Centrosymmetric = 2, Mixed = 3 };

struct GroupSpec {
  GroupFamily family = GroupFamily::Cyclic;
  int n = 1;  // order parameter of C_n / D_n
  bool centrosymmetric = false;
};

struct PointGroup {
  std::string name;
  GroupType type = GroupType::Rotational;
  std::vector<Mat3<double>> elements;
  std::vector<Mat3<double>> generators;
  std::size_t expected_order = 0;
  bool exact = false;  // every entry of every element is an integer

  std::size_t order() const { return elements.size(); }

  /// Elements in the requested scalar; the rational form needs `exact`.
  template <class S>
  std::vector<Mat3<S>> elements_as() const {
    if constexpr (std::is_same_v<S, double>) {
      return elements;
    } else {
      if (!exact) throw Error("group " + name + " has irrational entries; use floating arithmetic");
      std::vector<Mat3<S>> out;
      out.reserve(elements.size());
      for (const auto& e : elements) {
        Mat3<S> m{};
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j) m[i][j] = S(static_cast<long>(std::lround(e[i][j])));
        out.push_back(m);
      }
      return out;
    }
  }
};

namespace detail {

inline constexpr std::size_t kMaxGroupOrder = 240;

inline Mat3<double> snap(Mat3<double> m) {
  for (auto& row : m)
    for (auto& v : row) {
      const double r = std::round(v);
      if (std::abs(v - r) < 1e-12) v = r == 0.0 ? 0.0 : r;
    }
  return m;
}

inline bool is_integral(const Mat3<double>& m) {
  for (const auto& row : m)
    for (double v : row)
      if (v != std::round(v)) return false;
  return true;
}

inline bool contains(const std::vector<Mat3<double>>& set, const Mat3<double>& m) {
  for (const auto& e : set)
    if (max_abs_difference(e, m) < tolerances().element_match) return true;
  return false;
}

/// Breadth-first closure from the identity under right multiplication by
/// the generators.
inline std::vector<Mat3<double>> closure(const std::vector<Mat3<double>>& generators) {
  std::vector<Mat3<double>> elements{mat3_identity<double>()};
  for (std::size_t k = 0; k < elements.size(); ++k) {
    for (const auto& g : generators) {
      const Mat3<double> m = snap(elements[k] * g);
      if (contains(elements, m)) continue;
      if (elements.size() >= kMaxGroupOrder)
        throw Error("group closure exceeded " + std::to_string(kMaxGroupOrder) + " elements");
      elements.push_back(m);
    }
  }
  return elements;
}

}  // namespace detail

/// Rotation by `angle` about the unit vector `axis` (right-handed).
inline Mat3<double> axis_rotation(std::array<double, 3> axis, double angle) {
  const double len = std::hypot(axis[0], axis[1], axis[2]);
  for (auto& a : axis) a /= len;
  const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
  const auto [x, y, z] = axis;
  Mat3<double> r{{{t * x * x + c, t * x * y - s * z, t * x * z + s * y},
                  {t * x * y + s * z, t * y * y + c, t * y * z - s * x},
                  {t * x * z - s * y, t * y * z + s * x, t * z * z + c}}};
  return detail::snap(r);
}

inline Mat3<double> inversion_matrix() {
  return Mat3<double>{{{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}};
}

inline std::string group_name(const GroupSpec& spec) {
  std::string s;
  switch (spec.family) {
    case GroupFamily::Cyclic: s = "C" + std::to_string(spec.n); break;
    case GroupFamily::Dihedral: s = "D" + std::to_string(spec.n); break;
    case GroupFamily::Tetrahedral: s = "T"; break;
    case GroupFamily::Octahedral: s = "O"; break;
    case GroupFamily::Icosahedral: s = "I"; break;
  }
  if (spec.centrosymmetric) s += "i";
  return s;
}

inline std::size_t family_order(const GroupSpec& spec) {
  std::size_t base = 0;
  switch (spec.family) {
    case GroupFamily::Cyclic: base = static_cast<std::size_t>(spec.n); break;
    case GroupFamily::Dihedral: base = 2 * static_cast<std::size_t>(spec.n); break;
    case GroupFamily::Tetrahedral: base = 12; break;
    case GroupFamily::Octahedral: base = 24; break;
    case GroupFamily::Icosahedral: base = 60; break;
  }
  return spec.centrosymmetric ? 2 * base : base;
}

inline std::vector<Mat3<double>> family_generators(const GroupSpec& spec) {
  constexpr double pi = std::numbers::pi;
  const Mat3<double> cyclic_perm{{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}};
  std::vector<Mat3<double>> gens;
  switch (spec.family) {
    case GroupFamily::Cyclic:
    case GroupFamily::Dihedral:
      if (spec.n < 1) throw Error("cyclic and dihedral groups need n >= 1");
      if (spec.n > 1) gens.push_back(axis_rotation({0, 0, 1}, 2.0 * pi / spec.n));
      if (spec.family == GroupFamily::Dihedral) gens.push_back(axis_rotation({1, 0, 0}, pi));
      break;
    case GroupFamily::Tetrahedral:
      gens = {Mat3<double>{{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}}, cyclic_perm};
      break;
    case GroupFamily::Octahedral:
      gens = {axis_rotation({0, 0, 1}, pi / 2.0), cyclic_perm};
      break;
    case GroupFamily::Icosahedral: {
      const double phi = std::numbers::phi;
      gens = {cyclic_perm, Mat3<double>{{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}},
              axis_rotation({0, phi, 1}, 2.0 * pi / 5.0)};
      break;
    }
  }
  if (spec.centrosymmetric) gens.push_back(inversion_matrix());
  return gens;
}

inline PointGroup build_group(const GroupSpec& spec) {
  PointGroup g;
  g.name = group_name(spec);
  g.type = spec.centrosymmetric ? GroupType::Centrosymmetric : GroupType::Rotational;
  g.generators = family_generators(spec);
  g.elements = detail::closure(g.generators);
  g.expected_order = family_order(spec);
  if (g.elements.size() != g.expected_order)
    throw Error("group " + g.name + " closed with " + std::to_string(g.elements.size()) +
                " elements, expected " + std::to_string(g.expected_order));
  g.exact = std::all_of(g.elements.begin(), g.elements.end(), detail::is_integral);
  return g;
}

/// Closure of an arbitrary generator list, e.g. the 2-fold rotations about x1
/// used to split D_n into C_n and C_2.
inline PointGroup group_from_generators(std::string name, std::vector<Mat3<double>> generators) {
  PointGroup g;
  g.name = std::move(name);
  for (auto& m : generators) m = detail::snap(m);
  g.generators = std::move(generators);
  g.elements = detail::closure(g.generators);
  g.expected_order = g.elements.size();
  const bool proper = std::all_of(g.elements.begin(), g.elements.end(),
                                  [](const auto& e) { return determinant(e) > 0.0; });
  const bool has_j = detail::contains(g.elements, inversion_matrix());
  g.type = proper ? GroupType::Rotational : has_j ? GroupType::Centrosymmetric : GroupType::Mixed;
  g.exact = std::all_of(g.elements.begin(), g.elements.end(), detail::is_integral);
  return g;
}

/// Mixed group G1 u J (G2 \ G1) for a rotation group G2 with index-2
/// subgroup G1.
inline PointGroup build_mixed_group(const GroupSpec& outer, const GroupSpec& inner) {
  if (outer.centrosymmetric || inner.centrosymmetric)
    throw Error("mixed groups are built from rotation groups");
  const PointGroup g2 = build_group(outer);
  const PointGroup g1 = build_group(inner);
  if (g2.order() != 2 * g1.order())
    throw Error(g1.name + " is not an index-2 subgroup of " + g2.name);
  for (const auto& e : g1.elements)
    if (!detail::contains(g2.elements, e)) throw Error(g1.name + " is not a subgroup of " + g2.name);
  PointGroup g;
  g.name = "type3:" + g2.name + "/" + g1.name;
  g.type = GroupType::Mixed;
  g.expected_order = g2.order();
  g.elements = g1.elements;
  for (const auto& e : g2.elements) {
    if (detail::contains(g1.elements, e)) continue;
    g.elements.push_back(detail::snap(inversion_matrix() * e));
    g.generators.push_back(g.elements.back());
  }
  g.generators.insert(g.generators.begin(), g1.generators.begin(), g1.generators.end());
  g.exact = std::all_of(g.elements.begin(), g.elements.end(), detail::is_integral);
  return g;
}

inline GroupSpec parse_group_spec(std::string_view name) {
  GroupSpec spec;
  std::string_view s = name;
  auto fail = [&]() -> GroupSpec {
    throw Error("unknown group name '" + std::string(name) +
                "' (expected C<n>, D<n>, T, O, I, optional suffix i, or type3:<G2>/<G1>)");
  };
  if (s.empty()) return fail();
  if (s.size() >= 2 && s.back() == 'i') {
    spec.centrosymmetric = true;
    s.remove_suffix(1);
  }
  const char head = s.front();
  s.remove_prefix(1);
  switch (head) {
    case 'C': spec.family = GroupFamily::Cyclic; break;
    case 'D': spec.family = GroupFamily::Dihedral; break;
    case 'T': spec.family = GroupFamily::Tetrahedral; break;
    case 'O': spec.family = GroupFamily::Octahedral; break;
    case 'I': spec.family = GroupFamily::Icosahedral; break;
    default: return fail();
  }
  if (spec.family == GroupFamily::Cyclic || spec.family == GroupFamily::Dihedral) {
    if (s.empty() || s.size() > 3) return fail();
    int n = 0;
    for (char c : s) {
      if (c < '0' || c > '9') return fail();
      n = 10 * n + (c - '0');
    }
    if (n < 1) return fail();
    spec.n = n;
  } else if (!s.empty()) {
    return fail();
  }
  if (family_order(spec) > detail::kMaxGroupOrder) return fail();
  return spec;
}

/// Builds a group from its name: C<n>, D<n>, T, O, I, suffix `i` for the
/// centrosymmetric extension, `type3:<G2>/<G1>` for mixed groups.
inline PointGroup make_group(std::string_view name) {
  constexpr std::string_view prefix = "type3:";
  if (name.substr(0, prefix.size()) == prefix) {
    const auto rest = name.substr(prefix.size());
    const auto slash = rest.find('/');
    if (slash == std::string_view::npos) throw Error("type3 group needs the form type3:<G2>/<G1>");
    return build_mixed_group(parse_group_spec(rest.substr(0, slash)), parse_group_spec(rest.substr(slash + 1)));
  }
  return build_group(parse_group_spec(name));
}

struct GroupReport {
  bool passed = true;
  std::size_t order = 0;
  double max_orthogonality_residual = 0.0;
  double max_closure_residual = 0.0;
  bool has_identity = false;
  bool has_inverses = false;
  std::vector<std::string> violations;
};

inline GroupReport verify_group(const PointGroup& g) {
  GroupReport rep;
  rep.order = g.order();
  const auto ident = mat3_identity<double>();
  const double tol = tolerances().element_match;
  auto nearest = [&](const Mat3<double>& m) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : g.elements) best = std::min(best, max_abs_difference(e, m));
    return best;
  };
  for (const auto& e : g.elements)
    rep.max_orthogonality_residual =
        std::max(rep.max_orthogonality_residual, max_abs_difference(transpose(e) * e, ident));
  if (rep.max_orthogonality_residual >= tolerances().orthogonality) {
    rep.passed = false;
    rep.violations.push_back("orthogonality: max |R^T R - I| = " + std::to_string(rep.max_orthogonality_residual));
  }
  rep.has_identity = nearest(ident) < tol;
  if (!rep.has_identity) {
    rep.passed = false;
    rep.violations.push_back("identity missing");
  }
  rep.has_inverses = true;
  for (const auto& e : g.elements)
    if (nearest(transpose(e)) >= tol) rep.has_inverses = false;
  if (!rep.has_inverses) {
    rep.passed = false;
    rep.violations.push_back("inverses: some element has no inverse in the set");
  }
  for (const auto& a : g.elements)
    for (const auto& b : g.elements) rep.max_closure_residual = std::max(rep.max_closure_residual, nearest(a * b));
  if (rep.max_closure_residual >= tol) {
    rep.passed = false;
    rep.violations.push_back("closure: max distance of a product from the set = " +
                             std::to_string(rep.max_closure_residual));
  }
  if (g.expected_order != 0 && g.order() != g.expected_order) {
    rep.passed = false;
    rep.violations.push_back("order: " + std::to_string(g.order()) + " elements, expected " +
                             std::to_string(g.expected_order));
  }
  return rep;
}

/// Groups exercised by the cross-validation suites and the CLI listing.
inline std::vector<std::string> builtin_group_names() {
  return {"C1",  "C2",  "C3",  "C4",  "C5",  "C6",  "D2",  "D3",  "D4",  "D5",
          "D6",  "T",   "O",   "I",   "C1i", "C2i", "C4i", "D4i", "Ti",  "Oi",
          "Ii",  "type3:C2/C1", "type3:C4/C2", "type3:D4/C4", "type3:D4/D2", "type3:O/T"};
}

}  // namespace hgptsym
