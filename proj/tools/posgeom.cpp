// posgeom: exact canonical forms, adjoints and residues of polytopes and
// plane polypols, from JSON descriptions.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "posgeom/canonical.hpp"
#include "posgeom/errors.hpp"
#include "posgeom/io.hpp"
#include "posgeom/parser.hpp"
#include "posgeom/polypol.hpp"
#include "posgeom/polytope.hpp"

namespace {

using namespace posgeom;
using nlohmann::json;

constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitVerify = 4;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Format parse_format(const std::string& s, bool latex_flag) {
  if (latex_flag) return Format::Latex;
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "latex") return Format::Latex;
  throw ParseError("unknown format '" + s + "'");
}

std::vector<Rat> parse_point_csv(const std::string& s) {
  std::vector<Rat> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rat(item));
  return out;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

void print_verify_report(const VerifyReport& rep, std::ostream& os) {
  for (const auto& s : rep.strata) {
    os << (s.pass ? "  [pass] " : "  [FAIL] ") << "dim " << s.dim << " stratum {";
    for (size_t i = 0; i < s.facets.size(); ++i) os << (i ? "," : "") << s.facets[i];
    os << "}: " << s.detail << "\n";
  }
  os << (rep.pass ? "verification passed" : "verification FAILED") << "\n";
}

json verify_report_json(const VerifyReport& rep) {
  json strata = json::array();
  for (const auto& s : rep.strata)
    strata.push_back({{"dim", s.dim}, {"facets", s.facets}, {"pass", s.pass},
                      {"detail", s.detail}});
  return {{"pass", rep.pass}, {"strata", strata}};
}

struct PolypolArgs {
  QuasiRegularPolypol qr;      // valid when has_intervals
  Polypol polypol;
  bool has_intervals = false;
  std::vector<std::vector<Rat>> extra_points;
  std::vector<ConjugateBlock> blocks;
};

PolypolArgs load_polypol(const std::string& path, const std::string& chart_matrix_csv) {
  PolypolInput in = parse_polypol_json(slurp(path));
  PolypolArgs out;
  Polypol p = validate_polypol(std::move(in.curves), std::move(in.vertices));
  if (!chart_matrix_csv.empty()) {
    const auto entries = parse_point_csv(chart_matrix_csv);
    if (entries.size() != 9)
      throw ParseError("--chart-matrix takes 9 rationals, row-major");
    RatMatrix M(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) M.at(i, j) = entries[i * 3 + j];
    p = transform_polypol(p, M);
  }
  out.extra_points = std::move(in.extra_points);
  out.blocks = std::move(in.blocks);
  if (!in.intervals.empty()) {
    out.qr = validate_quasi_regular(p, std::move(in.intervals));
    out.has_intervals = true;
    out.polypol = out.qr.polypol;
  } else {
    out.polypol = std::move(p);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact positive-geometry computations for polytopes and plane polypols"};
  app.require_subcommand(1);

  std::string input, format = "text", names_csv, at_csv, chart_matrix_csv;
  bool latex = false, verify = false, use_triangulation = false, universal = false,
       flip = false;
  int facet_index = -1;

  auto add_common = [&](CLI::App* cmd, bool needs_input = true) {
    if (needs_input) cmd->add_option("input", input, "input JSON file")->required();
    cmd->add_option("--format", format, "output format: text, json, latex");
    cmd->add_flag("--latex", latex, "shorthand for --format latex");
  };

  auto* c_vertices = app.add_subcommand("vertices", "vertices and incidence of a polytope");
  add_common(c_vertices);

  auto* c_canonical = app.add_subcommand("canonical", "canonical form of a polytope");
  add_common(c_canonical);
  c_canonical->add_flag("--triangulate", use_triangulation,
                        "sum the canonical forms of a pulling triangulation");
  c_canonical->add_flag("--verify", verify, "verify the residue recursion");
  c_canonical->add_flag("--flip-orientation", flip, "negate the overall orientation");

  auto* c_amplitude = app.add_subcommand("amplitude", "toric amplitude of a simple polytope");
  add_common(c_amplitude);
  c_amplitude->add_option("--names", names_csv, "facet variable names, comma separated");

  auto* c_adjoint = app.add_subcommand("adjoint", "adjoint polynomial of a simple polytope");
  add_common(c_adjoint);
  c_adjoint->add_flag("--universal", universal, "print the universal adjoint Adj_P(x)");
  c_adjoint->add_option("--names", names_csv, "facet variable names for --universal");

  auto* c_dualvol = app.add_subcommand("dualvol", "dual volume function vol((P-y)°)");
  add_common(c_dualvol);
  c_dualvol->add_option("--at", at_csv, "evaluate at the point y1,...,yd");

  auto* c_residue = app.add_subcommand("residue", "residue of the canonical form along a facet");
  add_common(c_residue);
  c_residue->add_option("--facet", facet_index, "facet index (row of U)")->required();
  c_residue->add_flag("--flip-orientation", flip, "negate the overall orientation");

  auto* c_verify = app.add_subcommand("verify", "verify the positive-geometry recursion");
  add_common(c_verify);

  auto* c_padjoint = app.add_subcommand("polypol-adjoint", "adjoint curve of a plane polypol");
  add_common(c_padjoint);
  c_padjoint->add_option("--chart-matrix", chart_matrix_csv,
                         "projective change of coordinates, 9 rationals row-major");

  auto* c_pcanonical =
      app.add_subcommand("polypol-canonical", "canonical form of a quasi-regular polypol");
  add_common(c_pcanonical);
  c_pcanonical->add_flag("--verify", verify, "verify the residue axioms");
  c_pcanonical->add_flag("--flip-orientation", flip, "negate the overall orientation");
  c_pcanonical->add_option("--chart-matrix", chart_matrix_csv,
                           "projective change of coordinates, 9 rationals row-major");

  CLI11_PARSE(app, argc, argv);

  try {
    const Format fmt = parse_format(format, latex);
    std::ostream& os = std::cout;

    if (c_vertices->parsed()) {
      const Polytope P = vertices_from_hrep(parse_polytope_json(slurp(input)));
      if (fmt == Format::Json) {
        json jv = json::array(), ji = json::array();
        for (const auto& v : P.vertices) {
          json row = json::array();
          for (const auto& x : v) row.push_back(x.str());
          jv.push_back(row);
        }
        for (const auto& inc : P.incidence) ji.push_back(inc);
        os << json{{"vertices", jv}, {"incidence", ji}}.dump(2) << "\n";
      } else {
        for (size_t k = 0; k < P.vertices.size(); ++k) {
          os << "(";
          for (size_t j = 0; j < P.vertices[k].size(); ++j)
            os << (j ? ", " : "") << emit_rat(P.vertices[k][j], fmt);
          os << ")  on facets {";
          for (size_t j = 0; j < P.incidence[k].size(); ++j)
            os << (j ? "," : "") << P.incidence[k][j];
          os << "}\n";
        }
      }
      return 0;
    }

    if (c_canonical->parsed()) {
      const Polytope P = vertices_from_hrep(parse_polytope_json(slurp(input)));
      CanonicalFormResult r =
          use_triangulation ? canonical_form_via_triangulation(P) : canonical_form_simple(P);
      RatForm form = flip ? r.form.flipped() : r.form;
      if (fmt == Format::Json) {
        json jd = json::array();
        for (const auto& f : form.coeff().denominator()) jd.push_back(emit_poly(f.poly, fmt));
        json out = {{"numerator", emit_poly(form.coeff().numerator(), fmt)},
                    {"denominator_factors", jd},
                    {"chart", form.chart_vars()}};
        bool ok = true;
        if (verify) {
          const VerifyReport rep = verify_positive_geometry(P);
          out["verification"] = verify_report_json(rep);
          ok = rep.pass;
        }
        os << out.dump(2) << "\n";
        if (!ok) return kExitVerify;
      } else {
        os << "omega(P) = " << emit_form(form, fmt) << "\n";
        os << "numerator: " << emit_poly(form.coeff().numerator(), fmt) << "\n";
        if (verify) {
          const VerifyReport rep = verify_positive_geometry(P);
          print_verify_report(rep, os);
          if (!rep.pass) return kExitVerify;
        }
      }
      return 0;
    }

    if (c_amplitude->parsed()) {
      const Polytope P = vertices_from_hrep(parse_polytope_json(slurp(input)));
      const Amplitude a = toric_amplitude(
          P, names_csv.empty() ? std::vector<std::string>{} : split_csv(names_csv));
      if (fmt == Format::Json) {
        json terms = json::array();
        for (const auto& t : a.terms) {
          json names = json::array();
          for (int F : t.facets) names.push_back(a.names[F]);
          terms.push_back({{"det", t.det_abs.str()}, {"facets", names}});
        }
        os << json{{"terms", terms}}.dump(2) << "\n";
      } else {
        os << "Amp_P(x) = " << a.str() << "\n";
      }
      return 0;
    }

    if (c_adjoint->parsed()) {
      const Polytope P = vertices_from_hrep(parse_polytope_json(slurp(input)));
      if (universal) {
        const UniversalAdjoint ua = universal_adjoint(
            P, names_csv.empty() ? std::vector<std::string>{} : split_csv(names_csv));
        if (fmt == Format::Json)
          os << json{{"universal_adjoint", emit_poly(ua.poly, Format::Text)}}.dump(2) << "\n";
        else
          os << "Adj_P(x) = " << emit_poly(ua.poly, fmt) << "\n";
      } else {
        const WarrenAdjoint wa = warren_adjoint(P);
        if (fmt == Format::Json)
          os << json{{"adjoint", emit_poly(wa.poly, Format::Text)}}.dump(2) << "\n";
        else
          os << "adj_P(y) = " << emit_poly(wa.poly, fmt) << "\n";
      }
      return 0;
    }

    if (c_dualvol->parsed()) {
      const Polytope P = vertices_from_hrep(parse_polytope_json(slurp(input)));
      const FactoredRatFn f = dual_volume_function(P);
      if (!at_csv.empty()) {
        const std::vector<Rat> y = parse_point_csv(at_csv);
        if (static_cast<int>(y.size()) != P.dim())
          throw ParseError("--at needs " + std::to_string(P.dim()) + " coordinates");
        const Rat v = f.eval(default_chart_vars(P.dim()), y);
        if (fmt == Format::Json)
          os << json{{"value", v.str()}}.dump(2) << "\n";
        else
          os << "vol((P-y)°) = " << emit_rat(v, fmt) << "\n";
      } else if (fmt == Format::Json) {
        os << json{{"dual_volume", emit_ratfn(f, Format::Text)}}.dump(2) << "\n";
      } else {
        os << "vol((P-y)°) = " << emit_ratfn(f, fmt) << "\n";
      }
      return 0;
    }

    if (c_residue->parsed()) {
      const Polytope P = vertices_from_hrep(parse_polytope_json(slurp(input)));
      if (facet_index < 0 || facet_index >= P.facet_count())
        throw DomainError("BadFacetIndex", "facet index out of range");
      RatForm form = is_simple(P)
                         ? canonical_form_simple(P).form
                         : RatForm(default_chart_vars(P.dim()), dual_volume_function(P));
      if (flip) form = form.flipped();
      const auto [eta, chart] =
          residue_along_linear(form, P.facet_form(facet_index, default_chart_vars(P.dim())));
      if (fmt == Format::Json)
        os << json{{"residue", eta.str()}, {"chart_map", chart.str()}}.dump(2) << "\n";
      else {
        os << "Res = " << emit_form(eta, fmt) << "\n";
        os << "chart: " << chart.str() << "\n";
      }
      return 0;
    }

    if (c_verify->parsed()) {
      const Polytope P = vertices_from_hrep(parse_polytope_json(slurp(input)));
      const VerifyReport rep = verify_positive_geometry(P);
      if (fmt == Format::Json)
        os << verify_report_json(rep).dump(2) << "\n";
      else
        print_verify_report(rep, os);
      return rep.pass ? 0 : kExitVerify;
    }

    if (c_padjoint->parsed()) {
      const PolypolArgs pa = load_polypol(input, chart_matrix_csv);
      const MPoly adj = adjoint_curve(pa.polypol, pa.extra_points, pa.blocks);
      if (fmt == Format::Json)
        os << json{{"adjoint", emit_poly(adj, Format::Text)}}.dump(2) << "\n";
      else
        os << "adj(x,y,z) = " << emit_poly(adj, fmt) << "\n";
      return 0;
    }

    if (c_pcanonical->parsed()) {
      const PolypolArgs pa = load_polypol(input, chart_matrix_csv);
      if (!pa.has_intervals)
        throw ParseError("polypol-canonical needs \"intervals\" in the input");
      const PolypolCanonical pc =
          canonical_form_polypol(pa.qr, flip, pa.extra_points, pa.blocks);
      if (fmt == Format::Json) {
        json out = {{"form", pc.form.str()},
                    {"alpha", pc.alpha.str()},
                    {"adjoint", emit_poly(pc.adjoint, Format::Text)}};
        bool ok = true;
        if (verify) {
          const VerifyReport rep =
              verify_polypol_geometry(pa.qr, flip, pa.extra_points, pa.blocks);
          out["verification"] = verify_report_json(rep);
          ok = rep.pass;
        }
        os << out.dump(2) << "\n";
        if (!ok) return kExitVerify;
      } else {
        os << "omega(P) = " << emit_form(pc.form, fmt) << "\n";
        os << "alpha = " << emit_rat(pc.alpha, fmt) << "\n";
        os << "adjoint: " << emit_poly(pc.adjoint, fmt) << "\n";
        if (verify) {
          const VerifyReport rep =
              verify_polypol_geometry(pa.qr, flip, pa.extra_points, pa.blocks);
          print_verify_report(rep, os);
          if (!rep.pass) return kExitVerify;
        }
      }
      return 0;
    }

    throw ParseError("no subcommand");
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const VerificationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerify;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return 0;
}
