// hgptsym: command-line front end. Each subcommand parses its flags, calls
// one library operation and prints the result as JSON or as a plain table.

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hgptsym/hgptsym.hpp"

namespace {

using namespace hgptsym;

enum class Format { Json, Table };

struct Common {
  std::string format;  // empty: table on a terminal, JSON otherwise
  std::string output;

  Format resolve() const {
    if (format == "json") return Format::Json;
    if (format == "table") return Format::Table;
    return isatty(fileno(stdout)) && output.empty() ? Format::Table : Format::Json;
  }
};

void emit(const Common& c, const json& doc, const std::string& table) {
  const std::string text = c.resolve() == Format::Json ? doc.dump(2) + "\n" : table;
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw Error("cannot write " + c.output);
  out << text;
}

std::array<double, 3> parse_point(const std::string& s) {
  std::array<double, 3> v{};
  std::stringstream ss(s);
  std::string part;
  std::size_t k = 0;
  while (std::getline(ss, part, ',')) {
    if (k == 3) throw Error("expected three comma-separated coordinates, got '" + s + "'");
    try {
      std::size_t used = 0;
      v[k++] = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error("bad coordinate '" + part + "' in '" + s + "'");
    }
  }
  if (k != 3) throw Error("expected three comma-separated coordinates, got '" + s + "'");
  return v;
}

std::string type_name(GroupType t) {
  switch (t) {
    case GroupType::Rotational: return "1";
    case GroupType::Centrosymmetric: return "2";
    case GroupType::Mixed: return "3";
  }
  return "?";
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

// ---------------------------------------------------------------------------

void run_group(const Common& c, const std::string& name, bool list) {
  const PointGroup g = make_group(name);
  const GroupReport rep = verify_group(g);
  json doc = document("group", {{"name", name}, {"list_elements", list}});
  doc["group"] = g.name;
  doc["type"] = static_cast<int>(g.type);
  doc["order"] = g.order();
  doc["arithmetic"] = g.exact ? "rational" : "double";
  doc["verification"] = {{"passed", rep.passed},
                         {"max_orthogonality_residual", rep.max_orthogonality_residual},
                         {"max_closure_residual", rep.max_closure_residual},
                         {"identity", rep.has_identity},
                         {"inverses", rep.has_inverses},
                         {"violations", rep.violations}};
  std::ostringstream t;
  t << "group " << g.name << "  type " << type_name(g.type) << "  order " << g.order() << "  "
    << (rep.passed ? "verified" : "FAILED verification") << "\n";
  for (const auto& v : rep.violations) t << "  " << v << "\n";
  if (list) {
    json els = json::array();
    for (const auto& e : g.elements) els.push_back(mat3_to_json(e));
    doc["elements"] = els;
    for (std::size_t k = 0; k < g.elements.size(); ++k) {
      t << "R" << k + 1 << ":\n";
      for (const auto& row : g.elements[k])
        t << "  " << std::setw(10) << display_number(row[0]) << std::setw(10) << display_number(row[1])
          << std::setw(10) << display_number(row[2]) << "\n";
    }
  }
  emit(c, doc, t.str());
}

void run_harmonic_basis(const Common& c, int degree, const std::string& style_name) {
  const BasisStyle style = parse_basis_style(style_name);
  const HarmonicBasis b = real_basis(degree, style);
  json doc = document("harmonic-basis", {{"degree", degree}, {"style", style_name}});
  json polys = json::array();
  std::ostringstream t;
  t << "degree " << degree << " (" << style_name << ")\n";
  for (std::size_t k = 0; k < b.size(); ++k) {
    const int l = static_cast<int>(k) - degree;
    polys.push_back({{"index", l},
                     {"scale", b.scales[k]},
                     {"text", to_string(b.polynomials[k])},
                     {"terms", polynomial_to_json(b.polynomials[k])}});
    t << "  I_" << degree << "^" << l << " = ";
    if (style == BasisStyle::Orthonormal) t << fmt(b.scales[k]) << " * (" << to_string(b.polynomials[k]) << ")\n";
    else t << to_string(b.polynomials[k]) << "\n";
  }
  doc["basis"] = polys;
  emit(c, doc, t.str());
}

void run_basis_change(const Common& c, int degree, const std::string& style_name) {
  const BasisChange bc = basis_change(degree, parse_basis_style(style_name));
  const Eigen::MatrixXcd a = bc.matrix();
  const double unitarity = (a * a.adjoint() - Eigen::MatrixXcd::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff();
  json doc = document("basis-change", {{"degree", degree}, {"style", style_name}});
  doc["layout"] = "A[m+n][l+n] = a_{l m}, where H_n^m = sum_l a_{l m} I_n^l";
  doc["matrix"] = complex_matrix_to_json(a);
  doc["unitarity_residual"] = unitarity;
  std::ostringstream t;
  t << "A^IH for degree " << degree << " (" << style_name << "), rows m = -n..n, columns l = -n..n\n";
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    t << " ";
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      std::ostringstream cell;
      cell << std::setprecision(6) << a(r, k).real() << (a(r, k).imag() < 0 ? "-" : "+")
           << std::abs(a(r, k).imag()) << "i";
      t << std::setw(24) << cell.str();
    }
    t << "\n";
  }
  t << "max |A A* - I| = " << fmt(unitarity) << "\n";
  emit(c, doc, t.str());
}

template <class S>
json basis_json(const std::vector<Polynomial<S>>& polys) {
  json out = json::array();
  for (const auto& p : polys) out.push_back({{"text", to_string(p)}, {"terms", polynomial_to_json(p)}});
  return out;
}

void run_invariant_harmonics(const Common& c, const std::string& name, int degree, const std::string& method) {
  const PointGroup g = make_group(name);
  json doc = document("invariant-harmonics", {{"group", name}, {"degree", degree}, {"method", method}});
  const long h = molien_series(g, degree).h[static_cast<std::size_t>(degree)];
  std::ostringstream t;
  t << "group " << g.name << "  degree " << degree << "  h_m " << h << "\n";
  if (method == "kelvin") {
    const auto polys = kelvin_invariant_harmonics(parse_group_spec(name), degree);
    doc["dimension"] = polys.size();
    doc["basis"] = basis_json(polys);
    for (const auto& p : polys) t << "  " << to_string(p) << "\n";
  } else if (method == "projector") {
    with_scalar(g, BasisStyle::Integer, [&]<class S>(std::type_identity<S>) {
      const auto inv = invariant_harmonics<S>(g, degree);
      doc["dimension"] = inv.dimension;
      doc["arithmetic"] = ScalarTraits<S>::name();
      doc["basis"] = basis_json(inv.polynomials);
      for (const auto& p : inv.polynomials) t << "  " << to_string(p) << "\n";
    });
  } else {
    throw Error("unknown method '" + method + "' (expected projector|kelvin)");
  }
  doc["h_m"] = h;
  emit(c, doc, t.str());
}

void run_invariants(const Common& c, const std::string& name, int p, int q, const std::string& style_name) {
  const PointGroup g = make_group(name);
  const BasisStyle style = parse_basis_style(style_name);
  json doc = document("invariants", {{"group", name}, {"p", p}, {"q", q}, {"style", style_name}});
  std::ostringstream t;
  with_scalar(g, style, [&]<class S>(std::type_identity<S>) {
    const auto inv = invariant_subspace(symmetric_product_space<S>(p, q, style), g);
    const auto pat = coefficient_pattern(inv);
    doc["dimension"] = inv.dimension;
    doc["arithmetic"] = ScalarTraits<S>::name();
    doc["basis"] = basis_json(inv.polynomials);
    doc["pattern"] = pattern_to_json(pat);
    t << std::left << std::setw(4) << "p" << std::setw(4) << "q" << std::setw(5) << "dim" << "basis\n";
    for (std::size_t k = 0; k < std::max<std::size_t>(1, inv.polynomials.size()); ++k) {
      if (k == 0) t << std::setw(4) << p << std::setw(4) << q << std::setw(5) << inv.dimension;
      else t << std::setw(13) << "";
      t << (k < inv.polynomials.size() ? to_string(inv.polynomials[k]) : "-") << "\n";
    }
    t << "\nindependent coefficients (" << pat.independent.size() << "):\n";
    for (const auto& r : pat.independent) t << "  " << to_string(r) << "\n";
    std::size_t nonzero = 0;
    for (const auto& r : pat.dependent)
      if (!r.is_zero()) {
        if (nonzero++ == 0) t << "tied coefficients:\n";
        t << "  " << to_string(r) << "\n";
      }
    t << "zero coefficients: " << pat.zero_count() << "\n";
  });
  emit(c, doc, t.str());
}

void run_molien(const Common& c, const std::string& name, int max_degree) {
  const PointGroup g = make_group(name);
  const MolienSeries m = molien_series(g, max_degree);
  json doc = document("molien", {{"group", name}, {"max_degree", max_degree}});
  doc["g"] = m.g;
  doc["h"] = m.h;
  std::ostringstream t;
  t << std::left << std::setw(4) << "m" << std::setw(8) << "g_m" << "h_m\n";
  for (std::size_t k = 0; k < m.g.size(); ++k) t << std::setw(4) << k << std::setw(8) << m.g[k] << m.h[k] << "\n";
  emit(c, doc, t.str());
}

void run_forward(const Common& c, const std::string& blocks_path, const std::string& source,
                 const std::string& receiver, int nmax) {
  const auto blocks = read_hgpt_blocks(blocks_path);
  const auto xs = parse_point(source);
  const auto xr = parse_point(receiver);
  const double v = forward_voltage(blocks, xr, xs, nmax);
  json doc = document("forward", {{"blocks", blocks_path}, {"source", xs}, {"receiver", xr}, {"nmax", nmax}});
  doc["V_sr"] = v;
  emit(c, doc, "V_sr = " + fmt(v) + "\n");
}

void run_pattern_residual(const Common& c, const std::string& blocks_path, const std::string& name) {
  const PointGroup g = make_group(name);
  const auto blocks = read_hgpt_blocks(blocks_path);
  json doc = document("pattern-residual", {{"blocks", blocks_path}, {"group", name}});
  json out = json::array();
  std::ostringstream t;
  t << std::left << std::setw(4) << "p" << std::setw(4) << "q" << std::setw(16) << "residual" << "relative\n";
  double total2 = 0.0;
  for (const auto& b : blocks) {
    const CoefficientPattern pat = with_scalar(g, b.style, [&]<class S>(std::type_identity<S>) {
      return coefficient_pattern(invariant_subspace(symmetric_product_space<S>(b.p, b.q, b.style), g));
    });
    const PatternProjection proj = apply_pattern(b, pat);
    const double norm = b.entries.norm();
    const double rel = norm > 0.0 ? proj.residual / norm : 0.0;
    total2 += proj.residual * proj.residual;
    json item = {{"p", b.p}, {"q", b.q}, {"residual", proj.residual}, {"relative_residual", rel},
                 {"projected", hgpt_to_json(proj.projected)}};
    if (b.p == b.q) item["determinant"] = b.entries.determinant();
    out.push_back(std::move(item));
    t << std::setw(4) << b.p << std::setw(4) << b.q << std::setw(16) << fmt(proj.residual) << fmt(rel) << "\n";
  }
  doc["blocks"] = out;
  doc["total_residual"] = std::sqrt(total2);
  t << "total residual " << fmt(std::sqrt(total2)) << "\n";
  emit(c, doc, t.str());
}

json cell_json(const TableCell& cell) {
  json j = {{"group", cell.group}, {"p", cell.p},         {"q", cell.q},
            {"dimension", cell.dimension}, {"arithmetic", cell.arithmetic}, {"basis", cell.basis}};
  if (cell.golden) {
    j["published_dimension"] = cell.golden->dimension;
    if (!cell.golden->note.empty()) j["note"] = cell.golden->note;
  }
  return j;
}

void run_regenerate_tables(const Common& c, const std::vector<std::string>& groups, const std::string& out_dir) {
  const auto cells = regenerate_tables(groups.empty() ? table_groups() : groups);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    for (const auto& cell : cells) {
      json doc = document("regenerate-tables", {{"group", cell.group}, {"p", cell.p}, {"q", cell.q}});
      doc["cell"] = cell_json(cell);
      const auto path = std::filesystem::path(out_dir) / (cell.group + "_" + std::to_string(cell.p) +
                                                          std::to_string(cell.q) + ".json");
      std::ofstream f(path);
      if (!f) throw Error("cannot write " + path.string());
      f << doc.dump(2) << "\n";
    }
  }
  json doc = document("regenerate-tables", {{"groups", groups.empty() ? table_groups() : groups}});
  json arr = json::array();
  std::ostringstream t;
  std::string current;
  for (const auto& cell : cells) {
    arr.push_back(cell_json(cell));
    if (cell.group != current) {
      current = cell.group;
      t << "\n" << cell.group << "\n" << std::left << std::setw(4) << "p" << std::setw(4) << "q" << std::setw(5)
        << "dim" << "basis\n";
    }
    for (std::size_t k = 0; k < std::max<std::size_t>(1, cell.basis.size()); ++k) {
      if (k == 0) t << std::setw(4) << cell.p << std::setw(4) << cell.q << std::setw(5) << cell.dimension;
      else t << std::setw(13) << "";
      t << (k < cell.basis.size() ? cell.basis[k] : "-") << "\n";
    }
    if (cell.golden && !cell.golden->note.empty()) t << std::setw(13) << "" << "note: " << cell.golden->note << "\n";
  }
  doc["cells"] = arr;
  emit(c, doc, t.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetry reduction of harmonic generalised polarizability tensors"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "json or table (default: table on a terminal, JSON otherwise)")
        ->check(CLI::IsMember({"json", "table"}));
    sub->add_option("-o,--output", common.output, "write to this file instead of stdout");
  };

  std::string group_name, style = "integer", method = "projector", blocks, source, receiver, out_dir;
  std::vector<std::string> groups;
  int degree = 0, p = 1, q = 1, max_degree = 8, nmax = 1;
  bool list = false;

  auto* g = app.add_subcommand("group", "build and verify a point group");
  g->add_option("--name", group_name, "C<n>, D<n>, T, O, I, suffix i, or type3:<G2>/<G1>")->required();
  g->add_flag("--list-elements", list, "include the element matrices");
  add_common(g);

  auto* hb = app.add_subcommand("harmonic-basis", "real harmonic polynomial basis of one degree");
  hb->add_option("--degree", degree)->required()->check(CLI::Range(0, 12));
  hb->add_option("--style", style)->check(CLI::IsMember({"integer", "orthonormal"}));
  add_common(hb);

  std::string bc_style = "orthonormal";
  auto* bc = app.add_subcommand("basis-change", "complex-to-real harmonic change of basis A^IH");
  bc->add_option("--degree", degree)->required()->check(CLI::Range(0, 12));
  bc->add_option("--style", bc_style)->check(CLI::IsMember({"integer", "orthonormal"}));
  add_common(bc);

  auto* ih = app.add_subcommand("invariant-harmonics", "harmonic polynomials fixed by a group");
  ih->add_option("--group", group_name)->required();
  ih->add_option("--degree", degree)->required()->check(CLI::Range(0, 12));
  ih->add_option("--method", method, "projector (any group) or kelvin (C_n, D_n)")
      ->check(CLI::IsMember({"projector", "kelvin"}));
  add_common(ih);

  auto* inv = app.add_subcommand("invariants", "fixed subspace of S_pq and the HGPT coefficient pattern");
  inv->add_option("--group", group_name)->required();
  inv->add_option("--p", p)->required()->check(CLI::Range(0, 6));
  inv->add_option("--q", q)->required()->check(CLI::Range(0, 6));
  inv->add_option("--style", style)->check(CLI::IsMember({"integer", "orthonormal"}));
  add_common(inv);

  auto* mo = app.add_subcommand("molien", "Molien series g_m and harmonic counts h_m");
  mo->add_option("--group", group_name)->required();
  mo->add_option("--max-degree", max_degree)->check(CLI::Range(0, 200));
  add_common(mo);

  auto* fw = app.add_subcommand("forward", "measurement V_sr from HGPT blocks");
  fw->add_option("--blocks", blocks, "JSON file of HGPT blocks")->required()->check(CLI::ExistingFile);
  fw->add_option("--source", source, "x,y,z")->required();
  fw->add_option("--receiver", receiver, "x,y,z")->required();
  fw->add_option("--nmax", nmax)->check(CLI::Range(1, 12));
  add_common(fw);

  auto* pr = app.add_subcommand("pattern-residual", "distance of HGPT blocks from a group's pattern");
  pr->add_option("--blocks", blocks, "JSON file of HGPT blocks")->required()->check(CLI::ExistingFile);
  pr->add_option("--group", group_name)->required();
  add_common(pr);

  auto* rt = app.add_subcommand("regenerate-tables", "dimension and basis tables of S_pq^G");
  rt->add_option("--groups", groups, "subset of groups (default: C2..C6, D2..D6, T, O, I)");
  rt->add_option("--output-dir", out_dir, "also write one JSON document per cell here");
  add_common(rt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*g) run_group(common, group_name, list);
    else if (*hb) run_harmonic_basis(common, degree, style);
    else if (*bc) run_basis_change(common, degree, bc_style);
    else if (*ih) run_invariant_harmonics(common, group_name, degree, method);
    else if (*inv) run_invariants(common, group_name, p, q, style);
    else if (*mo) run_molien(common, group_name, max_degree);
    else if (*fw) run_forward(common, blocks, source, receiver, nmax);
    else if (*pr) run_pattern_residual(common, blocks, group_name);
    else if (*rt) run_regenerate_tables(common, groups, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "hgptsym: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
