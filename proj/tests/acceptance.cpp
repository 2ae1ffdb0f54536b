// Acceptance suite: every criterion is exact (rational arithmetic, zero
// tolerance) and prints one line. The process exits nonzero if any fails.

#include <exception>
#include <functional>
#include <iostream>
#include <sstream>

#include "posgeom/canonical.hpp"
#include "posgeom/errors.hpp"
#include "posgeom/polypol.hpp"
#include "test_util.hpp"

using namespace posgeom;
using testutil::load_polypol_input;
using testutil::load_polytope;
using testutil::P;
using testutil::rats;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define ACCEPT(cond)                                                         \
  do {                                                                       \
    if (!(cond)) {                                                           \
      std::ostringstream os_;                                                \
      os_ << __FILE__ << ":" << __LINE__ << ": " << #cond;                   \
      throw Failure(os_.str());                                              \
    }                                                                        \
  } while (0)

const std::vector<std::string> Y2 = {"y1", "y2"};
const std::vector<std::string> XY = {"x", "y"};
const std::vector<std::string> XYZ = {"x", "y", "z"};

QuasiRegularPolypol quasi_regular(const std::string& fixture) {
  PolypolInput in = load_polypol_input(fixture);
  Polypol p = validate_polypol(std::move(in.curves), std::move(in.vertices));
  return validate_quasi_regular(std::move(p), std::move(in.intervals));
}

void criterion_1_pentagon_canonical() {
  const CanonicalFormResult r = canonical_form_simple(load_polytope("pentagon.json"));
  ACCEPT(r.numerator == P("5 - 3*y1 + 3*y2 - y1*y2", Y2));
  ACCEPT(r.denominator_factors.size() == 5);
  const std::vector<std::string> facets = {"1 + y1", "1 + y2", "1 - y1 + y2", "1 - y1",
                                           "1 - y2"};
  for (size_t i = 0; i < 5; ++i) ACCEPT(r.denominator_factors[i] == P(facets[i], Y2));
}

void criterion_2_pentagon_dual_volume() {
  const Polytope pent = load_polytope("pentagon.json");
  const FactoredRatFn dv = dual_volume_function(pent);
  ACCEPT(dv.eval(Y2, rats({0, 0})) == Rat(5));
  ACCEPT(dv.equals(canonical_form_simple(pent).form.coeff()));
}

void criterion_3_pentagon_amplitude_and_adjoints() {
  const Polytope pent = load_polytope("pentagon.json");
  const std::vector<std::string> names = {"x13", "x14", "x24", "x25", "x35"};
  const Amplitude a = toric_amplitude(pent, names);
  ACCEPT(a.terms.size() == 5);
  const FactoredRatFn expect_amp = [&] {
    FactoredRatFn total;
    for (const auto* pair : {"x13*x14", "x14*x24", "x24*x25", "x25*x35", "x13*x35"}) {
      const MPoly prod = P(pair, names);
      total = total + FactoredRatFn(MPoly::constant(Rat(1)).with_vars(names),
                                    {{prod, 1}});
    }
    return total;
  }();
  ACCEPT(a.as_rational().equals(expect_amp));

  const UniversalAdjoint ua = universal_adjoint(pent, names);
  ACCEPT(ua.poly ==
         P("x24*x25*x35 + x13*x25*x35 + x13*x14*x35 + x13*x14*x24 + x14*x24*x25", names));

  // substitution x <- U y + z y0 gives y0 * adj exactly
  const std::vector<std::string> ys = {"y0", "y1", "y2"};
  std::map<std::string, MPoly> repl;
  for (int F = 0; F < 5; ++F) {
    MPoly f = pent.hrep.z[F] * MPoly::variable("y0");
    for (int j = 0; j < 2; ++j)
      if (!pent.hrep.U.at(F, j).is_zero())
        f += pent.hrep.U.at(F, j) * MPoly::variable(ys[j + 1]);
    repl.emplace(names[F], f.with_vars(ys));
  }
  const MPoly substituted = ua.poly.substitute(repl, &ys);
  const MPoly adj = P("5*y0^2 - 3*y0*y1 + 3*y0*y2 - y1*y2", ys);
  ACCEPT(substituted == MPoly::variable("y0").with_vars(ys) * adj);
  ACCEPT(warren_adjoint(pent).poly == adj);
}

void criterion_4_quadrilateral() {
  const CanonicalFormResult r = canonical_form_simple(load_polytope("quadrilateral.json"));
  const FactoredRatFn expected(P("-18 + y1 + 12*y2", Y2), {{P("y1", Y2), 1},
                                                        {P("y2 - 1", Y2), 1},
                                                        {P("y1 + 2*y2 - 3", Y2), 1},
                                                        {P("y1 - 3*y2 - 3", Y2), 1}});
  ACCEPT(r.form.coeff().equals(expected) || r.form.coeff().equals(-expected));
}

void criterion_5_associahedron() {
  const Polytope assoc = load_polytope("assoc3d.json");
  ACCEPT(assoc.vertices.size() == 14);
  const VerifyReport rep = verify_positive_geometry(assoc);
  ACCEPT(rep.pass);
  for (const auto& s : rep.strata) ACCEPT(s.pass);
  ACCEPT(toric_amplitude(assoc).terms.size() == 14);
}

void criterion_6_pyramid_triangulation() {
  const Polytope pyr = load_polytope("pyramid.json");
  const CanonicalFormResult r = canonical_form_via_triangulation(pyr);
  const std::vector<std::string> Y3 = {"y1", "y2", "y3"};
  ACCEPT(r.denominator_factors.size() == 5);  // the internal wall cancelled
  for (const auto& f : r.denominator_factors) {
    bool matches = false;
    for (int i = 0; i < pyr.facet_count(); ++i)
      matches = matches || f.proportionality(pyr.facet_form(i, Y3)).has_value();
    ACCEPT(matches);
  }
  ACCEPT(r.form.coeff().equals(dual_volume_function(pyr)));
}

void criterion_7_residue_goldens() {
  // the three basic 2-form residues
  const RatForm w(XY, FactoredRatFn(P("1", XY), {{P("x", XY), 1}, {P("y", XY), 1}}));
  const FactoredRatFn minus_dy_over_y(P("-1", {"y"}), {{P("y", {"y"}), 1}});
  const FactoredRatFn dx_over_x(P("1", {"x"}), {{P("x", {"x"}), 1}});
  ACCEPT(residue_along_linear(w, P("x", XY)).first.coeff().equals(minus_dy_over_y));
  const RatForm w2(XY, FactoredRatFn(P("1", XY), {{P("x", XY), 1}, {P("y - x", XY), 1}}));
  ACCEPT(residue_along_linear(w2, P("x", XY)).first.coeff().equals(minus_dy_over_y));
  ACCEPT(residue_along_linear(w, P("y", XY)).first.coeff().equals(dx_over_x));

  // interval endpoint residues +-1
  const OneFormOnLine seg("t", P("3", {"t"}), P("(t - 2)*(5 - t)", {"t"}));
  ACCEPT(seg.residue_at(Rat(2)) == Rat(1));
  ACCEPT(seg.residue_at(Rat(5)) == Rat(-1));

  // circle pullback
  const OneFormOnLine target("t", P("1", {"t"}), P("t*(t - 1)", {"t"}));
  CurveParam circle{P("2*t", {"t"}), P("1 - t^2", {"t"}), P("t^2 + 1", {"t"})};
  CurveOneForm eta{XY,
                   FactoredRatFn(P("1", XY), {{P("1 - x - y", XY), 1}, {P("y", XY), 1}}),
                   "x"};
  ACCEPT(pullback_curve(eta, circle).equals(target));

  // cusp pullback
  CurveParam cusp{P("t^3", {"t"}), P("t^2", {"t"}), P("1", {"t"})};
  CurveOneForm cusp_eta{XY,
                        FactoredRatFn(P("x^2 + y^2 + x*y + x", XY),
                                      {{P("y - x^2", XY), 1}, {P("-3*y^2", XY), 1}}),
                        "x"};
  ACCEPT(pullback_curve(cusp_eta, cusp).equals(target));
}

void criterion_8_pizza_end_to_end() {
  const QuasiRegularPolypol q = quasi_regular("pizza.json");
  const ResidualArrangement ra = residual_arrangement(q.polypol);
  ACCEPT(ra.points.size() == 2);
  auto has = [&](const std::vector<Rat>& pt) {
    const auto n = normalize_homogeneous(pt);
    for (const auto& p : ra.points)
      if (p.coords == n) return true;
    return false;
  };
  ACCEPT(has(rats({-1, 0, 1})));
  ACCEPT(has(rats({0, -1, 1})));

  const PolypolCanonical pc = canonical_form_polypol(q);
  ACCEPT(pc.adjoint == P("x + y + z", XYZ));
  ACCEPT(pc.alpha == Rat(1));
  const FactoredRatFn eq3(P("1 + x + y", XY), {{P("x", XY), 1},
                                               {P("y", XY), 1},
                                               {P("1 - x^2 - y^2", XY), 1}});
  ACCEPT(pc.form.coeff().equals(eq3));

  const VerifyReport rep = verify_polypol_geometry(q);
  ACCEPT(rep.pass);
  for (int i = 0; i < 3; ++i) {
    const SegmentResidue sr = segment_residue(q, i, pc.form);
    ACCEPT(sr.form.residue_at(q.intervals[i].first) == Rat(1));
    ACCEPT(sr.form.residue_at(q.intervals[i].second) == Rat(-1));
  }
}

// --- criterion 9: property suites ---

std::optional<Polytope> random_simple_polytope(std::mt19937& rng, int d, int extra) {
  std::vector<std::vector<Rat>> rows;
  std::vector<Rat> z;
  for (int i = 0; i < d; ++i) {
    std::vector<Rat> e(d, Rat(0));
    e[i] = Rat(1);
    rows.push_back(e);
    z.push_back(Rat(1));
  }
  rows.push_back(std::vector<Rat>(d, Rat(-1)));
  z.push_back(Rat(d + 1));
  std::uniform_int_distribution<int> coef(-3, 3), zdist(2, 6);
  for (int k = 0; k < extra; ++k) {
    std::vector<Rat> u(d);
    bool all_zero = true;
    for (int j = 0; j < d; ++j) {
      u[j] = Rat(coef(rng));
      all_zero = all_zero && u[j].is_zero();
    }
    if (all_zero) u[0] = Rat(1);
    rows.push_back(u);
    z.push_back(Rat(zdist(rng)));
  }
  for (int attempt = 0; attempt < 4; ++attempt) {
    try {
      Polytope Pt = vertices_from_hrep(HRep{RatMatrix::from_rows(rows), z});
      if (!is_simple(Pt)) return std::nullopt;
      return Pt;
    } catch (const DomainError& e) {
      if (e.code() != "RedundantInequality") return std::nullopt;
      const auto naive = testutil::naive_vertices(rows, z);
      if (naive.empty()) return std::nullopt;
      std::vector<std::vector<Rat>> kept;
      std::vector<Rat> keptz;
      for (size_t i = 0; i < rows.size(); ++i) {
        int on = 0;
        for (const auto& v : naive) {
          Rat s = z[i];
          for (int j = 0; j < d; ++j) s += rows[i][j] * v[j];
          if (s.is_zero()) ++on;
        }
        if (on >= d) {
          kept.push_back(rows[i]);
          keptz.push_back(z[i]);
        }
      }
      if (kept.size() == rows.size() || kept.size() < static_cast<size_t>(d) + 1)
        return std::nullopt;
      rows = std::move(kept);
      z = std::move(keptz);
    }
  }
  return std::nullopt;
}

void criterion_9a_random_recursion() {
  std::mt19937 rng(20250809);
  int verified = 0, attempts = 0;
  while (verified < 25 && attempts < 500) {
    ++attempts;
    std::uniform_int_distribution<int> ddist(2, 3), edist(0, 4);
    auto Pt = random_simple_polytope(rng, ddist(rng), edist(rng));
    if (!Pt || Pt->facet_count() > 8) continue;
    ACCEPT(verify_positive_geometry(*Pt).pass);
    ++verified;
  }
  ACCEPT(verified == 25);
}

void criterion_9b_adjoint_vanishing() {
  std::mt19937 rng(1009);
  for (const auto* fixture :
       {"triangle.json", "pentagon.json", "quadrilateral.json", "cube01.json", "assoc3d.json"}) {
    const Polytope Pt = load_polytope(fixture);
    const UniversalAdjoint ua = universal_adjoint(Pt);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Rat> y(Pt.dim());
      for (auto& c : y) c = testutil::random_rat(rng, 9, 4);
      std::vector<Rat> x(Pt.facet_count(), Rat(0));
      for (int i = 0; i < Pt.facet_count(); ++i)
        for (int j = 0; j < Pt.dim(); ++j) x[i] += Pt.hrep.U.at(i, j) * y[j];
      ACCEPT(ua.poly.eval(x) == Rat(0));
    }
  }
}

void criterion_9c_gamma_independence() {
  for (const auto* fixture : {"pizza.json", "triangle_polypol.json", "lens.json",
                              "pentagon_polypol.json", "nonconvex_quad.json"}) {
    const QuasiRegularPolypol q = quasi_regular(fixture);
    const PolypolCanonical pc = canonical_form_polypol(q);  // throws on mismatch
    for (size_t i = 0; i < q.polypol.curves.size(); ++i)
      ACCEPT(segment_residue(q, static_cast<int>(i), pc.form).gamma == Rat(1));
  }
}

void criterion_9d_unimodular_equivariance() {
  std::mt19937 rng(4096);
  const Polytope pent = load_polytope("pentagon.json");
  const FactoredRatFn base = canonical_form_simple(pent).form.coeff();
  std::uniform_int_distribution<int> shear(-2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    RatMatrix A = RatMatrix::identity(2);
    for (int k = 0; k < 3; ++k) {
      RatMatrix S = RatMatrix::identity(2);
      if (k % 2 == 0)
        S.at(0, 1) = Rat(shear(rng));
      else
        S.at(1, 0) = Rat(shear(rng));
      A = A * S;
    }
    const std::vector<Rat> b = {Rat(shear(rng)), Rat(shear(rng))};
    ACCEPT(A.det() == Rat(1));
    std::vector<std::vector<Rat>> tv;
    for (const auto& v : pent.vertices) {
      auto w = A.apply(v);
      for (int j = 0; j < 2; ++j) w[j] += b[j];
      tv.push_back(std::move(w));
    }
    const Polytope Q = vertices_from_hrep(hrep_from_vertices(tv));
    const FactoredRatFn g = canonical_form_simple(Q).form.coeff();
    std::map<std::string, MPoly> repl;
    for (int i = 0; i < 2; ++i) {
      MPoly img = MPoly::constant(b[i]).with_vars(Y2);
      for (int j = 0; j < 2; ++j)
        if (!A.at(i, j).is_zero()) img += A.at(i, j) * MPoly::variable(Y2[j]).with_vars(Y2);
      repl.emplace(Y2[i], img);
    }
    const MPoly n = g.numerator().substitute(repl, &Y2);
    std::vector<Factor> den;
    for (const auto& f : g.denominator())
      den.push_back({f.poly.substitute(repl, &Y2), f.exp});
    ACCEPT(FactoredRatFn(n, den).equals(base));
  }
}

void criterion_9e_polar_involution() {
  for (const auto* fixture : {"pentagon.json", "cube11.json"}) {
    const Polytope Pt = load_polytope(fixture);
    ACCEPT(polar_dual(polar_dual(Pt)).vertices == Pt.vertices);
  }
}

void criterion_9_property_suites() {
  criterion_9a_random_recursion();
  criterion_9b_adjoint_vanishing();
  criterion_9c_gamma_independence();
  criterion_9d_unimodular_equivariance();
  criterion_9e_polar_involution();
}

void criterion_10_negative_tests() {
  // elliptic boundary curve: the adjoint is not unique
  {
    PolypolInput in = load_polypol_input("elliptic.json");
    const Polypol p = validate_polypol(in.curves, in.vertices);
    bool threw = false;
    try {
      adjoint_curve(p);
    } catch (const DomainError& e) {
      threw = e.code() == "KernelDimensionNot1";
    }
    ACCEPT(threw);
  }
  // non-simple facet arrangement refused by the interpolation route
  {
    bool threw = false;
    try {
      adjoint_through_residual_points(load_polytope("cube01.json"));
    } catch (const DomainError& e) {
      threw = e.code() == "ArrangementNotSimple";
    }
    ACCEPT(threw);
  }
  // tangential vertex
  {
    std::vector<PlaneCurve> curves(3);
    curves[0].f = P("y", XYZ);
    curves[1].f = P("z^2 - x^2 - y^2", XYZ);
    curves[2].f = P("z - y", XYZ);
    bool threw = false;
    try {
      validate_polypol(curves, {rats({1, 0, 1}), rats({0, 1, 1}), rats({1, 0, 0})});
    } catch (const DomainError& e) {
      threw = e.code() == "NotTransversal";
    }
    ACCEPT(threw);
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
      {"1: pentagon canonical form numerator and facet factors", criterion_1_pentagon_canonical},
      {"2: pentagon dual volume, value 5 and symbolic identity", criterion_2_pentagon_dual_volume},
      {"3: pentagon amplitude, Segre cubic adjoint, y0 substitution",
       criterion_3_pentagon_amplitude_and_adjoints},
      {"4: quadrilateral canonical form up to orientation sign", criterion_4_quadrilateral},
      {"5: 3d associahedron vertices, full verification, 14 amplitude terms",
       criterion_5_associahedron},
      {"6: pyramid triangulation property and wall cancellation",
       criterion_6_pyramid_triangulation},
      {"7: residue calculus goldens", criterion_7_residue_goldens},
      {"8: pizza polypol end to end", criterion_8_pizza_end_to_end},
      {"9: property suites (recursion, adjoint vanishing, gamma, equivariance, polarity)",
       criterion_9_property_suites},
      {"10: negative tests (elliptic, non-simple arrangement, tangential vertex)",
       criterion_10_negative_tests},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    try {
      fn();
      std::cout << "[PASS] criterion " << name << "\n";
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "[FAIL] criterion " << name << ": " << e.what() << "\n";
    }
  }
  if (failures) std::cout << failures << " criterion(s) failed\n";
  else std::cout << "all acceptance criteria passed\n";
  return failures == 0 ? 0 : 1;
}
