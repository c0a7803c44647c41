#pragma once

// Regeneration of the symmetric-product tables: dimension and canonical
// basis of S_pq^G for the cyclic, dihedral and polyhedral rotation groups at
// (p, q) = (1,1), (1,2), (1,3), (2,2), checked against the published cyclic
// dimensions.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hgptsym/groups.hpp"
#include "hgptsym/invariants.hpp"

namespace hgptsym {

inline constexpr std::array<std::pair<int, int>, 4> kTableCells = {{{1, 1}, {1, 2}, {1, 3}, {2, 2}}};

inline std::vector<std::string> table_groups() {
  return {"C2", "C3", "C4", "C5", "C6", "D2", "D3", "D4", "D5", "D6", "T", "O", "I"};
}

struct GoldenDimension {
  std::size_t dimension = 0;
  std::string note;
};

/// Published dimensions for the cyclic groups. The C5 (1,2) table cell
/// prints dimension 2 next to three basis polynomials; the computed
/// dimension is 3, the same as C6, and that value is used here.
inline std::optional<GoldenDimension> golden_dimension(const std::string& group, int p, int q) {
  static const std::map<std::string, std::array<std::size_t, 4>> dims = {
      {"C2", {4, 7, 11, 9}}, {"C3", {2, 5, 7, 5}}, {"C4", {2, 3, 5, 5}}, {"C5", {2, 3, 3, 3}}, {"C6", {2, 3, 3, 3}}};
  const auto it = dims.find(group);
  if (it == dims.end()) return std::nullopt;
  for (std::size_t k = 0; k < kTableCells.size(); ++k)
    if (kTableCells[k] == std::pair{p, q}) {
      GoldenDimension g{it->second[k], ""};
      if (group == "C5" && p == 1 && q == 2) g.note = "table prints dim 2 but lists 3 independent polynomials";
      return g;
    }
  return std::nullopt;
}

struct TableCell {
  std::string group;
  int p = 0;
  int q = 0;
  std::size_t dimension = 0;
  std::string arithmetic;  // "rational" or "double"
  std::vector<std::string> basis;
  std::optional<GoldenDimension> golden;
};

/// Computes one cell with the integer harmonic basis.
inline TableCell compute_table_cell(const PointGroup& group, int p, int q) {
  return with_scalar(group, BasisStyle::Integer, [&]<class S>(std::type_identity<S>) {
    const auto inv = invariant_subspace(symmetric_product_space<S>(p, q, BasisStyle::Integer), group);
    TableCell cell;
    cell.group = group.name;
    cell.p = p;
    cell.q = q;
    cell.dimension = inv.dimension;
    cell.arithmetic = ScalarTraits<S>::name();
    for (const auto& poly : inv.polynomials) cell.basis.push_back(to_string(poly));
    cell.golden = golden_dimension(group.name, p, q);
    return cell;
  });
}

/// Every (group, cell) pair; a mismatch with a published dimension throws.
inline std::vector<TableCell> regenerate_tables(const std::vector<std::string>& groups = table_groups()) {
  std::vector<TableCell> out;
  for (const auto& name : groups) {
    const PointGroup g = make_group(name);
    for (const auto& [p, q] : kTableCells) {
      TableCell cell = compute_table_cell(g, p, q);
      if (cell.golden && cell.golden->dimension != cell.dimension)
        throw Error("dim S_" + std::to_string(p) + std::to_string(q) + "^" + name + " = " +
                    std::to_string(cell.dimension) + ", published value " + std::to_string(cell.golden->dimension));
      out.push_back(std::move(cell));
    }
  }
  return out;
}

}  // namespace hgptsym
