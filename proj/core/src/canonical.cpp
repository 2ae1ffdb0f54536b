#include "posgeom/canonical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "posgeom/errors.hpp"

namespace posgeom {

std::vector<std::string> default_chart_vars(int d) {
  std::vector<std::string> v;
  for (int i = 1; i <= d; ++i) v.push_back("y" + std::to_string(i));
  return v;
}

namespace {

std::vector<std::string> default_facet_names(int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

std::vector<std::string> check_names(const Polytope& P, std::vector<std::string> names) {
  if (names.empty()) return default_facet_names(P.facet_count());
  if (static_cast<int>(names.size()) != P.facet_count())
    throw DomainError("BadNames", "need one facet variable name per inequality");
  for (size_t i = 0; i < names.size(); ++i)
    for (size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) throw DomainError("BadNames", "duplicate facet name");
  return names;
}

Rat abs_det_incident(const Polytope& P, int k) {
  return P.incident_rows(k).det().abs();
}

// Triangulation of the normal cone at vertex k into d-ray subcones, each a
// sorted list of facet indices. Uses only incident facet rays, pulling from
// the lowest facet index.
std::vector<std::vector<int>> normal_cone_triangulation(const Polytope& P, int k) {
  const int d = P.dim();
  const std::vector<int>& inc = P.incidence[k];
  if (static_cast<int>(inc.size()) == d) return {inc};
  // Cut the cone by a hyperplane {x . w = 1} with w pointing into the
  // polytope; the rays' cross-section is a (d-1)-polytope.
  std::vector<Rat> w = P.vertex_centroid();
  for (int j = 0; j < d; ++j) w[j] -= P.vertices[k][j];
  std::vector<std::vector<Rat>> pts;
  for (int F : inc) {
    Rat s(0);
    for (int j = 0; j < d; ++j) s += P.hrep.U.at(F, j) * w[j];
    if (!(s > Rat(0)))
      throw DomainError("Internal", "normal cone ray not cut by the section");
    std::vector<Rat> p(d);
    for (int j = 0; j < d; ++j) p[j] = P.hrep.U.at(F, j) / s;
    pts.push_back(std::move(p));
  }
  std::vector<std::vector<int>> out;
  for (const auto& simplex : pulling_triangulation(pts)) {
    std::vector<int> T;
    for (int i : simplex) T.push_back(inc[i]);
    std::sort(T.begin(), T.end());
    out.push_back(std::move(T));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rat abs_det_rows(const Polytope& P, const std::vector<int>& rows) {
  RatMatrix M(static_cast<int>(rows.size()), P.dim());
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < P.dim(); ++j) M.at(static_cast<int>(i), j) = P.hrep.U.at(rows[i], j);
  return M.det().abs();
}

FactoredRatFn combined_vertex_sum(const Polytope& P,
                                  const std::vector<std::vector<int>>& subcones_per_term,
                                  const std::vector<std::string>& vars) {
  const int n = P.facet_count();
  std::vector<MPoly> forms(n);
  for (int i = 0; i < n; ++i) forms[i] = P.facet_form(i, vars);
  MPoly num(vars);
  for (const auto& T : subcones_per_term) {
    const Rat det = abs_det_rows(P, T);
    MPoly t = MPoly::constant(det).with_vars(vars);
    std::vector<bool> in(n, false);
    for (int F : T) in[F] = true;
    for (int F = 0; F < n; ++F)
      if (!in[F]) t = t * forms[F];
    num += t;
  }
  std::vector<Factor> den;
  for (int i = 0; i < n; ++i) den.push_back({forms[i], 1});
  return FactoredRatFn(std::move(num), std::move(den));
}

}  // namespace

CanonicalFormResult canonical_form_simple(const Polytope& P) {
  if (!is_simple(P))
    throw DomainError("NotSimple", "vertex lies on more than d facets");
  const auto vars = default_chart_vars(P.dim());
  std::vector<std::vector<int>> terms;
  for (size_t k = 0; k < P.vertices.size(); ++k) terms.push_back(P.incidence[k]);
  FactoredRatFn coeff = combined_vertex_sum(P, terms, vars);
  CanonicalFormResult r{RatForm(vars, coeff), coeff.numerator(), {}};
  for (int i = 0; i < P.facet_count(); ++i)
    r.denominator_factors.push_back(P.facet_form(i, vars));
  return r;
}

FactoredRatFn dual_volume_function(const Polytope& P) {
  const auto vars = default_chart_vars(P.dim());
  std::vector<std::vector<int>> terms;
  for (size_t k = 0; k < P.vertices.size(); ++k)
    for (const auto& T : normal_cone_triangulation(P, static_cast<int>(k)))
      terms.push_back(T);
  return combined_vertex_sum(P, terms, vars);
}

Amplitude toric_amplitude(const Polytope& P, std::vector<std::string> names) {
  if (!is_simple(P)) throw DomainError("NotSimple", "toric amplitude needs a simple polytope");
  Amplitude a;
  a.names = check_names(P, std::move(names));
  for (size_t k = 0; k < P.vertices.size(); ++k)
    a.terms.push_back({abs_det_incident(P, static_cast<int>(k)), P.incidence[k]});
  return a;
}

FactoredRatFn Amplitude::as_rational() const {
  FactoredRatFn total;
  for (const auto& t : terms) {
    std::vector<Factor> den;
    for (int F : t.facets) den.push_back({MPoly::variable(names[F]), 1});
    total = total + FactoredRatFn(MPoly::constant(t.det_abs), std::move(den));
  }
  return total;
}

FactoredRatFn Amplitude::substituted(const Polytope& P,
                                     const std::vector<std::string>& vars) const {
  FactoredRatFn total;
  for (const auto& t : terms) {
    std::vector<Factor> den;
    for (int F : t.facets) den.push_back({P.facet_form(F, vars), 1});
    total = total + FactoredRatFn(MPoly::constant(t.det_abs).with_vars(vars), std::move(den));
  }
  return total;
}

std::string Amplitude::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " + ";
    if (!terms[i].det_abs.is_one()) os << terms[i].det_abs.str() << "/";
    else os << "1/";
    os << "(";
    for (size_t j = 0; j < terms[i].facets.size(); ++j) {
      if (j) os << "*";
      os << names[terms[i].facets[j]];
    }
    os << ")";
  }
  return os.str();
}

UniversalAdjoint universal_adjoint(const Polytope& P, std::vector<std::string> names) {
  if (!is_simple(P)) throw DomainError("NotSimple", "universal adjoint needs a simple polytope");
  UniversalAdjoint ua;
  ua.names = check_names(P, std::move(names));
  MPoly adj(ua.names);
  const int n = P.facet_count();
  for (size_t k = 0; k < P.vertices.size(); ++k) {
    MPoly t = MPoly::constant(abs_det_incident(P, static_cast<int>(k))).with_vars(ua.names);
    std::vector<bool> in(n, false);
    for (int F : P.incidence[k]) in[F] = true;
    for (int F = 0; F < n; ++F)
      if (!in[F]) t = t * MPoly::variable(ua.names[F]).with_vars(ua.names);
    adj += t;
  }
  ua.poly = std::move(adj);
  return ua;
}

WarrenAdjoint warren_adjoint(const Polytope& P) {
  const int d = P.dim(), n = P.facet_count();
  std::vector<std::string> yvars;
  for (int i = 0; i <= d; ++i) yvars.push_back("y" + std::to_string(i));

  if (!is_simple(P)) {
    // Numerator of the dual volume function, homogenized to degree n-d-1.
    // The chart variables are y1..yd already, so homogenizing prepends y0.
    const MPoly num = dual_volume_function(P).numerator();
    return {num.homogenize("y0", n - d - 1)};
  }

  const UniversalAdjoint ua = universal_adjoint(P);
  std::map<std::string, MPoly> repl;
  for (int F = 0; F < n; ++F) {
    MPoly f = P.hrep.z[F] * MPoly::variable("y0");
    for (int j = 0; j < d; ++j)
      if (!P.hrep.U.at(F, j).is_zero())
        f += P.hrep.U.at(F, j) * MPoly::variable(yvars[j + 1]);
    repl.emplace(ua.names[F], f.with_vars(yvars));
  }
  const MPoly subst = ua.poly.substitute(repl, &yvars);
  auto q = MPoly::exact_div(subst, MPoly::variable("y0").with_vars(yvars));
  if (!q)
    throw DomainError("DivisionByY0Fails",
                      "Adj_P(U y + z y0) is not divisible by y0; input data is inconsistent");
  return {std::move(*q)};
}

CanonicalFormResult canonical_form_via_triangulation(const Polytope& P) {
  const auto vars = default_chart_vars(P.dim());
  FactoredRatFn total;
  for (const auto& s : triangulate(P)) {
    const Polytope simplex = vertices_from_hrep(simplex_hrep(s));
    total = total + canonical_form_simple(simplex).form.coeff();
  }
  CanonicalFormResult r{RatForm(vars, total), total.numerator(), {}};
  for (const auto& f : total.denominator()) r.denominator_factors.push_back(f.poly);
  return r;
}

namespace {

RatForm polytope_canonical_coeff(const Polytope& P, const std::vector<std::string>& vars) {
  FactoredRatFn c = is_simple(P) ? canonical_form_simple(P).form.coeff()
                                 : dual_volume_function(P);
  if (!vars.empty() && vars != default_chart_vars(P.dim())) {
    // Rename chart variables in place (the formulas are chart-agnostic).
    const auto from = default_chart_vars(P.dim());
    std::map<std::string, MPoly> repl;
    for (size_t i = 0; i < from.size(); ++i) repl.emplace(from[i], MPoly::variable(vars[i]));
    MPoly num = c.numerator().substitute(repl, &vars);
    std::vector<Factor> den;
    for (const auto& f : c.denominator()) den.push_back({f.poly.substitute(repl, &vars), f.exp});
    c = FactoredRatFn(std::move(num), std::move(den));
  }
  return RatForm(vars, c);
}

struct VerifierState {
  const Polytope* root;
  VerifyReport report;
  std::set<std::vector<std::vector<Rat>>> seen;  // stratum keys: sorted original vertices
};

// Affine lift chart -> original coordinates.
struct Lift {
  RatMatrix A;
  std::vector<Rat> b;
  std::vector<Rat> apply(const std::vector<Rat>& x) const {
    std::vector<Rat> out = A.apply(x);
    for (size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
  }
};

std::vector<int> original_facets_of(const Polytope& root,
                                    const std::vector<std::vector<Rat>>& verts) {
  std::vector<int> common;
  for (int i = 0; i < root.facet_count(); ++i) {
    bool all = true;
    for (const auto& v : verts) {
      Rat s = root.hrep.z[i];
      for (int j = 0; j < root.dim(); ++j) s += root.hrep.U.at(i, j) * v[j];
      if (!s.is_zero()) { all = false; break; }
    }
    if (all) common.push_back(i);
  }
  return common;
}

void verify_recurse(VerifierState* st, const Polytope& Q,
                    const std::vector<std::string>& vars, const Lift& lift) {
  // Stratum key and label in original coordinates.
  std::vector<std::vector<Rat>> overts;
  for (const auto& v : Q.vertices) overts.push_back(lift.apply(v));
  std::sort(overts.begin(), overts.end(), lex_less);
  if (!st->seen.insert(overts).second) return;
  const std::vector<int> label = original_facets_of(*st->root, overts);

  auto record = [&](int dim, bool ok, const std::string& detail) {
    st->report.strata.push_back({dim, label, ok, detail});
    if (!ok) st->report.pass = false;
  };

  const RatForm w = polytope_canonical_coeff(Q, vars);

  // (a) poles are exactly the facet hyperplanes, each simple.
  bool poles_ok = static_cast<int>(w.coeff().denominator().size()) == Q.facet_count();
  for (int i = 0; i < Q.facet_count() && poles_ok; ++i)
    poles_ok = pole_order(w, Q.facet_form(i, vars)) == 1;
  if (!poles_ok) {
    record(Q.dim(), false, "pole structure mismatch");
    return;
  }

  if (Q.dim() == 1) {
    record(1, true, "simple poles on both endpoints");
    // (c) endpoint residues are +-1 with opposite signs.
    const OneFormOnLine eta(vars[0], w.coeff().numerator(),
                            w.coeff().denominator_expanded());
    for (size_t k = 0; k < Q.vertices.size(); ++k) {
      const Rat r = eta.residue_at(Q.vertices[k][0]);
      const bool ok = r == Rat(1) || r == Rat(-1);
      std::vector<std::vector<Rat>> vkey = {lift.apply(Q.vertices[k])};
      if (st->seen.insert(vkey).second) {
        st->report.strata.push_back({0, original_facets_of(*st->root, vkey), ok,
                                     "endpoint residue " + r.str()});
        if (!ok) st->report.pass = false;
      }
    }
    return;
  }

  record(Q.dim(), true, "simple poles on all facet hyperplanes");

  // (b) each facet residue equals the facet's canonical form up to the
  // induced orientation sign.
  for (int i = 0; i < Q.facet_count(); ++i) {
    const MPoly ell = Q.facet_form(i, vars);
    auto [eta, chart] = residue_along_linear(w, ell);

    // Facet polytope in the chart of the eliminated pivot variable.
    const auto pit = std::find(vars.begin(), vars.end(), chart.pivot_var);
    const int pivot = static_cast<int>(pit - vars.begin());
    const std::vector<std::string> sub_vars = eta.chart_vars();
    std::vector<std::vector<Rat>> fverts;        // in the sub-chart
    std::vector<std::vector<Rat>> fverts_orig;   // in original coordinates
    for (size_t k = 0; k < Q.vertices.size(); ++k) {
      const auto& inc = Q.incidence[k];
      if (!std::binary_search(inc.begin(), inc.end(), i)) continue;
      std::vector<Rat> v;
      for (int j = 0; j < Q.dim(); ++j)
        if (j != pivot) v.push_back(Q.vertices[k][j]);
      fverts.push_back(std::move(v));
      fverts_orig.push_back(lift.apply(Q.vertices[k]));
    }
    const Polytope QF = vertices_from_hrep(hrep_from_vertices(fverts));
    const RatForm wf = polytope_canonical_coeff(QF, sub_vars);
    const bool match = eta.equals(wf) || eta.equals(wf.flipped());
    if (!match) {
      std::sort(fverts_orig.begin(), fverts_orig.end(), lex_less);
      st->report.strata.push_back(
          {Q.dim() - 1, original_facets_of(*st->root, fverts_orig), false,
           "residue does not match the facet canonical form"});
      st->report.pass = false;
      continue;
    }

    // Composed lift for the recursion: reinsert the pivot coordinate from
    // the recorded chart map (an affine function of the remaining vars).
    const int k = Q.dim();
    RatMatrix Asub(k, k - 1);
    std::vector<Rat> bsub(k, Rat(0));
    int col = 0;
    for (int j = 0; j < k; ++j) {
      if (j == pivot) continue;
      Asub.at(j, col) = Rat(1);
      ++col;
    }
    const MPoly numer = chart.numer.with_vars(sub_vars);
    for (const auto& [e, c] : numer.terms()) {
      int where = -1;
      for (size_t q = 0; q < e.size(); ++q)
        if (e[q] == 1) where = static_cast<int>(q);
      if (where < 0)
        bsub[pivot] = c / chart.denom;
      else
        Asub.at(pivot, where) = c / chart.denom;
    }
    Lift sub{lift.A * Asub, lift.b};
    const std::vector<Rat> extra = lift.A.apply(bsub);
    for (size_t q = 0; q < sub.b.size(); ++q) sub.b[q] += extra[q];
    verify_recurse(st, QF, sub_vars, sub);
  }
}

}  // namespace

VerifyReport verify_positive_geometry(const Polytope& P) {
  if (P.dim() > 4)
    throw DomainError("RecursionDepth", "verification is bounded to d <= 4");
  VerifierState st;
  st.root = &P;
  Lift id{RatMatrix::identity(P.dim()), std::vector<Rat>(P.dim(), Rat(0))};
  verify_recurse(&st, P, default_chart_vars(P.dim()), id);
  return std::move(st.report);
}

MPoly adjoint_through_residual_points(const Polytope& P) {
  const int d = P.dim(), n = P.facet_count();
  // Simplicity of the projective hyperplane arrangement: no d+1 of the
  // closures [z_F : u_F] may share a point.
  {
    bool simple_arr = true;
    std::vector<int> idx(d + 1);
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (!simple_arr) return;
      if (depth == d + 1) {
        RatMatrix M(d + 1, d + 1);
        for (int i = 0; i <= d; ++i) {
          M.at(i, 0) = P.hrep.z[idx[i]];
          for (int j = 0; j < d; ++j) M.at(i, j + 1) = P.hrep.U.at(idx[i], j);
        }
        if (M.rank() <= d) simple_arr = false;
        return;
      }
      for (int i = start; i < n; ++i) {
        idx[depth] = i;
        rec(i + 1, depth + 1);
      }
    };
    if (n >= d + 1) rec(0, 0);
    if (!simple_arr)
      throw DomainError("ArrangementNotSimple",
                        "d+1 facet hyperplanes meet; the interpolation "
                        "characterization of the adjoint does not apply");
  }
  if (d != 2)
    throw DomainError("ArrangementNotSimple",
                      "residual-point interpolation is implemented for d = 2 only");

  const int deg = n - d - 1;
  // Homogeneous monomials of degree deg in (y0, y1, y2).
  std::vector<std::vector<int>> monos;
  for (int a = deg; a >= 0; --a)
    for (int b = deg - a; b >= 0; --b) monos.push_back({a, b, deg - a - b});
  const std::vector<std::string> yvars = {"y0", "y1", "y2"};

  const auto flats = residual_flats(P);
  RatMatrix M(static_cast<int>(flats.size()), static_cast<int>(monos.size()));
  for (size_t i = 0; i < flats.size(); ++i) {
    if (flats[i].span.size() != 1)
      throw DomainError("Internal", "2D residual flats must be points");
    const auto& p = flats[i].span[0];
    for (size_t j = 0; j < monos.size(); ++j) {
      Rat v(1);
      for (int q = 0; q < 3; ++q)
        for (int e = 0; e < monos[j][q]; ++e) v *= p[q];
      M.at(static_cast<int>(i), static_cast<int>(j)) = v;
    }
  }
  const auto kernel = M.nullspace();
  if (kernel.size() != 1)
    throw DomainError("KernelDimensionNot1",
                      "interpolation kernel has dimension " + std::to_string(kernel.size()));
  MPoly::TermMap terms;
  for (size_t j = 0; j < monos.size(); ++j)
    if (!kernel[0][j].is_zero()) terms[monos[j]] = kernel[0][j];
  MPoly adj = MPoly::from_terms(yvars, std::move(terms));
  // Sign: positive at the homogenized vertex centroid.
  std::vector<Rat> c = P.vertex_centroid();
  const Rat val = adj.eval({Rat(1), c[0], c[1]});
  if (val < Rat(0)) adj = -adj;
  return adj;
}

}  // namespace posgeom
