#include "posgeom/polypol.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "posgeom/errors.hpp"

namespace posgeom {

namespace {

const std::vector<std::string> kXYZ = {"x", "y", "z"};
const std::string kT = "t";

Rat eval_hom(const MPoly& f, const std::vector<Rat>& p) {
  return f.with_vars(kXYZ).eval(p);
}

std::vector<Rat> gradient_at(const MPoly& f, const std::vector<Rat>& p) {
  std::vector<Rat> g;
  for (const auto& v : kXYZ) g.push_back(f.with_vars(kXYZ).derivative(v).eval(p));
  return g;
}

bool rank2(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return true;
  return false;
}

bool is_zero_vec(const std::vector<Rat>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

// f(r(t), s(t), h(t)) for homogeneous f.
MPoly compose_param(const MPoly& f, const CurveParam& phi) {
  return f.with_vars(kXYZ)
      .substitute({{"x", phi.r.with_vars({kT})},
                   {"y", phi.s.with_vars({kT})},
                   {"z", phi.h.with_vars({kT})}},
                  nullptr)
      .with_vars({kT});
}

std::vector<Rat> param_point(const CurveParam& phi, const Rat& t) {
  const std::vector<Rat> pt = {t};
  std::vector<Rat> p = {phi.r.with_vars({kT}).eval(pt), phi.s.with_vars({kT}).eval(pt),
                        phi.h.with_vars({kT}).eval(pt)};
  if (is_zero_vec(p))
    throw DomainError("ParamInconsistent", "parametrization has a base point at t = " + t.str());
  return normalize_homogeneous(std::move(p));
}

int param_degree(const CurveParam& phi) {
  return std::max({phi.r.total_degree(), phi.s.total_degree(), phi.h.total_degree()});
}

std::vector<Rat> param_infinity(const CurveParam& phi) {
  const int d = param_degree(phi);
  auto top = [&](const MPoly& p) {
    const auto c = p.with_vars({kT}).univariate_coeffs(kT);
    return static_cast<int>(c.size()) - 1 == d ? c.back() : Rat(0);
  };
  std::vector<Rat> p = {top(phi.r), top(phi.s), top(phi.h)};
  if (is_zero_vec(p))
    throw DomainError("ParamInconsistent", "parametrization degenerates at t = infinity");
  return normalize_homogeneous(std::move(p));
}

// All rational parameters t with phi(t) = p, plus whether phi(inf) = p.
std::pair<std::vector<Rat>, bool> param_preimages(const CurveParam& phi,
                                                  const std::vector<Rat>& p) {
  const MPoly r = phi.r.with_vars({kT}), s = phi.s.with_vars({kT}), h = phi.h.with_vars({kT});
  std::vector<MPoly> eqs = {p[1] * r - p[0] * s, p[2] * s - p[1] * h, p[2] * r - p[0] * h};
  std::vector<Rat> out;
  MPoly pick;
  for (const auto& e : eqs)
    if (!e.is_zero()) { pick = e; break; }
  if (pick.is_zero()) return {{}, false};  // phi constant; ruled out elsewhere
  for (const auto& [root, mult] : rational_roots(pick).roots) {
    if (param_point(phi, root) == p) out.push_back(root);
  }
  bool at_inf = param_infinity(phi) == p;
  return {out, at_inf};
}

// Rational linear factors of a binary form g(u, v), returned as root points
// (u0 : v0); a factor v0*u - u0*v corresponds to each.
std::vector<std::vector<Rat>> binary_root_points(const MPoly& g, const std::string& u,
                                                 const std::string& v) {
  std::vector<std::vector<Rat>> out;
  if (g.is_zero()) return out;
  const int m = g.total_degree();
  const MPoly p = g.substitute({{v, MPoly::constant(Rat(1))}}, nullptr).with_vars({u});
  if (p.is_zero() || p.total_degree() < m) out.push_back({Rat(1), Rat(0)});  // v^k | g
  if (!p.is_zero())
    for (const auto& [root, mult] : rational_roots(p).roots) out.push_back({root, Rat(1)});
  return out;
}

// Spot-check for irreducibility over C at desk scale: coordinate-form
// divisors, degenerate conics, and rational linear factors (complete for
// cubics over Q). Higher-degree or fully irrational factorizations are the
// caller's responsibility.
void spot_check_irreducible(const MPoly& f) {
  const int deg = f.total_degree();
  if (deg <= 0) throw DomainError("BadPolypol", "boundary curve has degree 0");
  if (deg == 1) return;
  for (const auto& v : kXYZ)
    if (MPoly::exact_div(f, MPoly::variable(v).with_vars(kXYZ)))
      throw DomainError("ReducibleCurve", "curve is divisible by " + v);
  if (deg == 2) {
    // Nondegenerate symmetric matrix <=> irreducible conic.
    const MPoly g = f.with_vars(kXYZ);
    RatMatrix Q(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        MPoly::Exponents e(3, 0);
        e[i] += 1;
        e[j] += 1;
        const auto it = g.terms().find(e);
        const Rat c = it == g.terms().end() ? Rat(0) : it->second;
        Q.at(i, j) = i == j ? c : c / Rat(2);
      }
    if (Q.det().is_zero()) throw DomainError("ReducibleCurve", "conic is degenerate");
    return;
  }
  // Candidate lines through rational points on two coordinate lines.
  std::vector<std::vector<Rat>> pts;  // points (x : y : z) on f = 0 and a coordinate line
  const MPoly g = f.with_vars(kXYZ);
  for (const auto& p : binary_root_points(g.substitute_value("x", Rat(0)), "y", "z"))
    pts.push_back({Rat(0), p[0], p[1]});
  for (const auto& p : binary_root_points(g.substitute_value("y", Rat(0)), "x", "z"))
    pts.push_back({p[0], Rat(0), p[1]});
  for (const auto& p : binary_root_points(g.substitute_value("z", Rat(0)), "x", "y"))
    pts.push_back({p[0], p[1], Rat(0)});
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      // Line through pts[i], pts[j] (skip coincident points).
      const std::vector<Rat>& a = pts[i];
      const std::vector<Rat>& b = pts[j];
      std::vector<Rat> L = {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                            a[0] * b[1] - a[1] * b[0]};
      if (is_zero_vec(L)) continue;
      MPoly line(kXYZ);
      for (int q = 0; q < 3; ++q)
        if (!L[q].is_zero()) line += L[q] * MPoly::variable(kXYZ[q]);
      if (MPoly::exact_div(f, line))
        throw DomainError("ReducibleCurve", "curve has the linear factor " + line.str());
    }
}

MPoly dehomogenized(const MPoly& f) {
  return f.with_vars(kXYZ)
      .substitute({{"z", MPoly::constant(Rat(1))}}, nullptr)
      .with_vars({"x", "y"});
}

void check_index(const Polypol& p, int i) {
  if (i < 0 || i >= static_cast<int>(p.curves.size()))
    throw DomainError("BadPolypol", "curve index out of range");
}

}  // namespace

std::vector<Rat> normalize_homogeneous(std::vector<Rat> v) {
  Int l(1);
  for (const auto& x : v) {
    Int den = x.den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
  }
  std::vector<Int> iv;
  Int g(0);
  for (const auto& x : v) {
    iv.push_back(x.num() * (l / x.den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), iv.back().get_mpz_t());
  }
  if (g == 0) return v;  // zero vector stays
  int sign = 0;
  for (const auto& x : iv)
    if (x != 0) { sign = sgn(x); break; }
  for (size_t i = 0; i < v.size(); ++i) v[i] = Rat(iv[i] * sign, g);
  return v;
}

int Polypol::total_degree() const {
  int n = 0;
  for (const auto& c : curves) n += c.degree();
  return n;
}

Polypol validate_polypol(std::vector<PlaneCurve> curves,
                         std::vector<std::vector<Rat>> vertices) {
  const int r = static_cast<int>(curves.size());
  if (r < 2) throw DomainError("BadPolypol", "a polypol needs r >= 2 boundary curves");
  if (static_cast<int>(vertices.size()) != r)
    throw DomainError("BadPolypol", "expected exactly r vertices (cyclic)");

  for (auto& c : curves) {
    c.f = c.f.with_vars(kXYZ);
    if (c.f.is_zero() || !c.f.is_homogeneous())
      throw DomainError("BadPolypol", "curve equations must be nonzero homogeneous in x,y,z");
    spot_check_irreducible(c.f);
    if (c.param) {
      CurveParam& phi = *c.param;
      phi.r = phi.r.with_vars({kT});
      phi.s = phi.s.with_vars({kT});
      phi.h = phi.h.with_vars({kT});
      if (phi.r.is_zero() && phi.s.is_zero() && phi.h.is_zero())
        throw DomainError("ParamInconsistent", "zero parametrization");
      const MPoly g0 = univariate_gcd(univariate_gcd(phi.r, phi.s, kT), phi.h, kT);
      if (g0.total_degree() > 0)
        throw DomainError("ParamInconsistent", "r, s, h share the factor " + g0.str());
      if (param_degree(phi) != c.degree())
        throw DomainError("ParamInconsistent",
                          "parametrization degree differs from the curve degree");
      if (!compose_param(c.f, phi).is_zero())
        throw DomainError("ParamInconsistent", "f(r,s,h) is not identically zero");
    }
    for (auto& q : c.nodes) {
      if (q.size() != 3) throw DomainError("BadPolypol", "nodes must be homogeneous triples");
      q = normalize_homogeneous(std::move(q));
    }
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if (curves[i].f.proportionality(curves[j].f))
        throw DomainError("BadPolypol", "boundary curves must be distinct");

  for (auto& v : vertices) {
    if (v.size() != 3) throw DomainError("BadPolypol", "vertices must be homogeneous triples");
    v = normalize_homogeneous(std::move(v));
    if (is_zero_vec(v)) throw DomainError("BadPolypol", "zero vertex");
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if (vertices[i] == vertices[j])
        throw DomainError("BadPolypol", "vertices must be distinct points");

  for (int i = 0; i < r; ++i) {
    const int j = (i + 1) % r;
    const auto& v = vertices[i];  // v_{i,i+1}
    if (!eval_hom(curves[i].f, v).is_zero() || !eval_hom(curves[j].f, v).is_zero())
      throw DomainError("VertexNotOnCurves",
                        "vertex " + std::to_string(i) + " must lie on its two curves");
    for (int k = 0; k < r; ++k) {
      if (k == i || k == j) continue;
      if (eval_hom(curves[k].f, v).is_zero())
        throw DomainError("VertexOnThirdCurve",
                          "vertex " + std::to_string(i) + " lies on curve " + std::to_string(k));
    }
    const auto gi = gradient_at(curves[i].f, v);
    const auto gj = gradient_at(curves[j].f, v);
    if (is_zero_vec(gi) || is_zero_vec(gj))
      throw DomainError("VertexSingular",
                        "vertex " + std::to_string(i) + " is a singular point of a boundary curve");
    if (!rank2(gi, gj))
      throw DomainError("NotTransversal",
                        "boundary curves are tangent at vertex " + std::to_string(i));
  }
  return Polypol{std::move(curves), std::move(vertices)};
}

QuasiRegularPolypol validate_quasi_regular(Polypol p,
                                           std::vector<std::pair<Rat, Rat>> intervals) {
  const int r = static_cast<int>(p.curves.size());
  if (static_cast<int>(intervals.size()) != r)
    throw DomainError("BadPolypol", "expected one parameter interval per curve");
  for (int i = 0; i < r; ++i) {
    if (!p.curves[i].param)
      throw DomainError("ParamInconsistent",
                        "curve " + std::to_string(i) + " needs a parametrization for its segment");
    const CurveParam& phi = *p.curves[i].param;
    const auto& [a, b] = intervals[i];
    if (a == b) throw DomainError("BadPolypol", "degenerate parameter interval");
    const auto& v_in = p.vertices[(i + r - 1) % r];  // v_{i-1,i}
    const auto& v_out = p.vertices[i];               // v_{i,i+1}
    if (param_point(phi, a) != v_in)
      throw DomainError("ParamInconsistent",
                        "phi_" + std::to_string(i) + "(a) is not the entering vertex");
    if (param_point(phi, b) != v_out)
      throw DomainError("ParamInconsistent",
                        "phi_" + std::to_string(i) + "(b) is not the leaving vertex");
    // The open segment must avoid parameters mapping to singular points.
    const Rat lo = std::min(a, b), hi = std::max(a, b);
    for (const auto& q : p.curves[i].nodes) {
      const auto pre = param_preimages(phi, q).first;
      for (const auto& t : pre)
        if (lo < t && t < hi)
          throw DomainError("SegmentThroughSingularPoint",
                            "segment " + std::to_string(i) + " passes through a node at t = " +
                                t.str());
    }
  }
  return QuasiRegularPolypol{std::move(p), std::move(intervals)};
}

ResidualArrangement residual_arrangement(const Polypol& p,
                                         const std::vector<std::vector<Rat>>& extra_points,
                                         const std::vector<ConjugateBlock>& blocks) {
  const int r = static_cast<int>(p.curves.size());
  ResidualArrangement ra;
  auto add_point = [&](std::vector<Rat> pt, const std::string& kind) {
    pt = normalize_homogeneous(std::move(pt));
    for (const auto& existing : ra.points)
      if (existing.coords == pt) return;
    ra.points.push_back({std::move(pt), kind});
  };
  auto vertex_pair = [&](const std::vector<Rat>& pt) -> int {
    for (int m = 0; m < r; ++m)
      if (p.vertices[m] == pt) return m;
    return -1;
  };

  // Declared nodes: gradient zero, nondegenerate Hessian in a chart, not on
  // any other boundary curve.
  for (int i = 0; i < r; ++i) {
    for (const auto& q : p.curves[i].nodes) {
      if (!eval_hom(p.curves[i].f, q).is_zero())
        throw DomainError("NotNodal", "declared node does not lie on its curve");
      if (!is_zero_vec(gradient_at(p.curves[i].f, q)))
        throw DomainError("NotNodal", "declared node is a smooth point");
      int chart = -1;
      for (int c = 0; c < 3; ++c)
        if (!q[c].is_zero()) chart = c;
      std::vector<std::string> uv;
      for (int c = 0; c < 3; ++c)
        if (c != chart) uv.push_back(kXYZ[c]);
      const MPoly fa = p.curves[i]
                           .f.with_vars(kXYZ)
                           .substitute({{kXYZ[chart], MPoly::constant(Rat(1))}}, nullptr)
                           .with_vars(uv);
      std::vector<Rat> qa;
      for (int c = 0; c < 3; ++c)
        if (c != chart) qa.push_back(q[c] / q[chart]);
      const Rat fuu = fa.derivative(uv[0]).derivative(uv[0]).eval(qa);
      const Rat fuv = fa.derivative(uv[0]).derivative(uv[1]).eval(qa);
      const Rat fvv = fa.derivative(uv[1]).derivative(uv[1]).eval(qa);
      if ((fuu * fvv - fuv * fuv).is_zero())
        throw DomainError("NotNodal", "declared singular point is not a node");
      for (int j = 0; j < r; ++j)
        if (j != i && eval_hom(p.curves[j].f, q).is_zero())
          throw DomainError("NotNodal", "node of one boundary curve lies on another");
      add_point(q, "node(" + std::to_string(i) + ")");
    }
  }

  // Pairwise intersections via parametrization pullback.
  std::vector<bool> block_used(blocks.size(), false);
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      const int k = p.curves[i].param ? i : (p.curves[j].param ? j : -1);
      if (k < 0) {
        if (extra_points.empty())
          throw DomainError("IrrationalIntersection",
                            "curves " + std::to_string(i) + "," + std::to_string(j) +
                                " have no parametrization; supply extra_points");
        continue;  // intersections must come from extra_points
      }
      const int other = k == i ? j : i;
      const CurveParam& phi = *p.curves[k].param;
      const MPoly g = compose_param(p.curves[other].f, phi);
      if (g.is_zero())
        throw DomainError("BadPolypol", "boundary curves share a component");
      const int expected = p.curves[i].degree() * p.curves[j].degree();
      const int m_inf = expected - g.total_degree();
      const std::string kind = "intersection(" + std::to_string(i) + "," + std::to_string(j) + ")";
      auto classify = [&](const std::vector<Rat>& pt, int mult) {
        const int m = vertex_pair(pt);
        if (m >= 0) {
          if (mult != 1)
            throw DomainError("NotNodal", "tangential intersection at a vertex");
          return;
        }
        if (mult != 1)
          throw DomainError("NotNodal", "boundary curves are tangent off the vertices");
        add_point(pt, kind);
      };
      if (m_inf > 0) {
        const auto pinf = param_infinity(phi);
        if (!eval_hom(p.curves[other].f, pinf).is_zero())
          throw DomainError("Internal", "degree deficit without intersection at infinity");
        classify(pinf, m_inf);
      }
      const RationalRoots rr = rational_roots(g);
      for (const auto& [t0, mult] : rr.roots) classify(param_point(phi, t0), mult);
      int covered = 0;
      for (size_t bi = 0; bi < blocks.size(); ++bi) {
        if (blocks[bi].curve != k) continue;
        const MPoly m = blocks[bi].minpoly.with_vars({kT});
        if (m.total_degree() < 1) throw DomainError("BadBlock", "constant minimal polynomial");
        if (!rational_roots(m).roots.empty())
          throw DomainError("BadBlock", "conjugate block minimal polynomial has a rational root");
        if (MPoly::exact_div(g, m)) {
          covered += m.total_degree();
          block_used[bi] = true;
        }
      }
      ra.unresolved += std::max(0, rr.cofactor_degree - covered);
    }
  }
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    check_index(p, blocks[bi].curve);
    if (!block_used[bi])
      throw DomainError("BadBlock",
                        "conjugate block does not divide any intersection polynomial");
    ra.blocks.push_back(blocks[bi]);
  }

  for (auto pt : extra_points) {
    pt = normalize_homogeneous(std::move(pt));
    int on = 0;
    for (const auto& c : p.curves)
      if (eval_hom(c.f, pt).is_zero()) ++on;
    if (on < 2)
      throw DomainError("BadPolypol", "extra point does not lie on two boundary curves");
    if (vertex_pair(pt) >= 0) continue;
    add_point(pt, "extra");
  }
  return ra;
}

MPoly adjoint_curve(const Polypol& p, const std::vector<std::vector<Rat>>& extra_points,
                    const std::vector<ConjugateBlock>& blocks) {
  const int n = p.total_degree();
  if (n < 3) throw DomainError("BadPolypol", "adjoint needs total boundary degree >= 3");
  const ResidualArrangement ra = residual_arrangement(p, extra_points, blocks);
  if (ra.unresolved > 0)
    throw DomainError("IrrationalIntersection",
                      std::to_string(ra.unresolved) +
                          " intersection parameters are not rational and not covered by "
                          "conjugate blocks");

  const int deg = n - 3;
  std::vector<MPoly::Exponents> monos;
  for (int a = deg; a >= 0; --a)
    for (int b = deg - a; b >= 0; --b) monos.push_back({a, b, deg - a - b});

  std::vector<std::vector<Rat>> rows;
  for (const auto& pt : ra.points) {
    std::vector<Rat> row;
    for (const auto& e : monos)
      row.push_back(pt.coords[0].pow(e[0]) * pt.coords[1].pow(e[1]) * pt.coords[2].pow(e[2]));
    rows.push_back(std::move(row));
  }
  for (const auto& blk : ra.blocks) {
    const CurveParam& phi = *p.curves[blk.curve].param;
    const MPoly m = blk.minpoly.with_vars({kT});
    const int md = m.total_degree();
    const std::vector<Rat> mc = m.univariate_coeffs(kT);
    // Reduce each monomial composed with phi modulo the minimal polynomial;
    // every remainder coefficient is one linear condition.
    std::vector<std::vector<Rat>> cond(md, std::vector<Rat>(monos.size(), Rat(0)));
    for (size_t mi = 0; mi < monos.size(); ++mi) {
      MPoly comp = phi.r.with_vars({kT}).pow(monos[mi][0]) *
                   phi.s.with_vars({kT}).pow(monos[mi][1]) *
                   phi.h.with_vars({kT}).pow(monos[mi][2]);
      // Univariate remainder mod m.
      std::vector<Rat> c = comp.with_vars({kT}).univariate_coeffs(kT);
      while (static_cast<int>(c.size()) - 1 >= md) {
        const Rat q = c.back() / mc.back();
        const int shift = static_cast<int>(c.size()) - 1 - md;
        for (int q2 = 0; q2 <= md; ++q2) c[q2 + shift] -= q * mc[q2];
        while (!c.empty() && c.back().is_zero()) c.pop_back();
        if (c.empty()) break;
      }
      c.resize(md, Rat(0));
      for (int q2 = 0; q2 < md; ++q2) cond[q2][mi] = c[q2];
    }
    for (auto& row : cond) rows.push_back(std::move(row));
  }

  RatMatrix M(static_cast<int>(rows.size()), static_cast<int>(monos.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < monos.size(); ++j)
      M.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  const auto kernel = M.nullspace();
  if (kernel.size() != 1)
    throw DomainError("KernelDimensionNot1",
                      "adjoint interpolation kernel has dimension " +
                          std::to_string(kernel.size()));
  MPoly::TermMap terms;
  for (size_t j = 0; j < monos.size(); ++j)
    if (!kernel[0][j].is_zero()) terms[monos[j]] = kernel[0][j];
  MPoly adj = MPoly::from_terms(kXYZ, std::move(terms)).primitive_normalized();

  for (const auto& c : p.curves)
    if (MPoly::exact_div(adj, c.f))
      throw DomainError("AdjointContainsBoundary", "adjoint vanishes on a boundary curve");
  for (const auto& v : p.vertices)
    if (eval_hom(adj, v).is_zero())
      throw DomainError("AdjointContainsBoundary", "adjoint vanishes at a vertex");
  return adj;
}

SegmentResidue segment_residue(const QuasiRegularPolypol& q, int i, const RatForm& candidate) {
  check_index(q.polypol, i);
  const PlaneCurve& curve = q.polypol.curves[i];
  if (!curve.param)
    throw DomainError("ParamInconsistent", "segment residue needs a parametrization");
  const MPoly f_aff = dehomogenized(curve.f);
  if (pole_order(candidate, f_aff) > 1)
    throw DomainError("HigherOrderPole", "candidate has a higher-order pole on the curve");

  const CurveOneForm eta = residue_along_curve(candidate, f_aff);
  int raw_num = 0, raw_den = 0;
  const OneFormOnLine pulled = pullback_curve(eta, *curve.param, &raw_num, &raw_den);

  const auto& [a, b] = q.intervals[i];
  // Certify the log-segment shape: constant numerator over (t-a)(t-b).
  bool shape_ok = !pulled.coeff().is_zero() && pulled.coeff().numerator().is_constant();
  if (shape_ok) {
    const auto& den = pulled.coeff().denominator();
    shape_ok = den.size() == 2;
    const MPoly t = MPoly::variable(kT);
    const MPoly la = t - MPoly::constant(a);
    const MPoly lb = t - MPoly::constant(b);
    if (shape_ok) {
      bool seen_a = false, seen_b = false;
      for (const auto& fct : den) {
        if (fct.exp != 1) shape_ok = false;
        if (fct.poly == la) seen_a = true;
        else if (fct.poly == lb) seen_b = true;
        else shape_ok = false;
      }
      shape_ok = shape_ok && seen_a && seen_b;
    }
  }
  if (!shape_ok)
    throw DomainError("ResidueNotLogSegmentForm",
                      "pulled-back residue on curve " + std::to_string(i) +
                          " is not c/((t-a)(b-t)) dt: " + pulled.str());
  const Rat gamma = pulled.residue_at(a);
  SegmentResidue sr;
  sr.form = pulled;
  sr.gamma = gamma;
  sr.beta = gamma * (b - a);
  sr.raw_num_degree = raw_num;
  sr.raw_den_degree = raw_den - 2;
  return sr;
}

PolypolCanonical canonical_form_polypol(const QuasiRegularPolypol& q, bool flip,
                                        const std::vector<std::vector<Rat>>& extra_points,
                                        const std::vector<ConjugateBlock>& blocks) {
  for (const auto& c : q.polypol.curves)
    if (c.f.proportionality(MPoly::variable("z").with_vars(kXYZ)))
      throw DomainError("ChartDegenerate",
                        "a boundary curve is the chart's line at infinity; supply a "
                        "projective change of coordinates");
  const MPoly adj = adjoint_curve(q.polypol, extra_points, blocks);

  std::vector<Factor> den;
  for (const auto& c : q.polypol.curves) den.push_back({dehomogenized(c.f), 1});
  const std::vector<std::string> xy = {"x", "y"};
  const RatForm unnormalized(xy, FactoredRatFn(adj.with_vars(kXYZ)
                                                   .substitute({{"z", MPoly::constant(Rat(1))}},
                                                               nullptr)
                                                   .with_vars(xy),
                                               std::move(den)));
  const int r = static_cast<int>(q.polypol.curves.size());
  std::vector<Rat> gammas;
  for (int i = 0; i < r; ++i) gammas.push_back(segment_residue(q, i, unnormalized).gamma);
  for (int i = 1; i < r; ++i)
    if (gammas[i] != gammas[0])
      throw DomainError("GammaMismatch",
                        "segment " + std::to_string(i) + " has gamma " + gammas[i].str() +
                            " but segment 0 has " + gammas[0].str() +
                            "; check the interval orientations");
  Rat alpha = gammas[0].inverse();
  if (flip) alpha = -alpha;
  return PolypolCanonical{RatForm(xy, alpha * unnormalized.coeff()), alpha, adj};
}

VerifyReport verify_polypol_geometry(const QuasiRegularPolypol& q, bool flip,
                                     const std::vector<std::vector<Rat>>& extra_points,
                                     const std::vector<ConjugateBlock>& blocks) {
  const PolypolCanonical pc = canonical_form_polypol(q, flip, extra_points, blocks);
  const int r = static_cast<int>(q.polypol.curves.size());
  VerifyReport report;
  std::vector<SegmentResidue> srs;
  const Rat expect0 = flip ? Rat(-1) : Rat(1);
  for (int i = 0; i < r; ++i) {
    const MPoly f_aff = dehomogenized(q.polypol.curves[i].f);
    bool ok = pole_order(pc.form, f_aff) == 1;
    std::string detail = ok ? "simple pole" : "pole order is not 1";
    SegmentResidue sr = segment_residue(q, i, pc.form);
    const auto& [a, b] = q.intervals[i];
    const MPoly t = MPoly::variable(kT);
    const OneFormOnLine expected(
        kT, MPoly::constant(expect0 * (b - a)),
        (t - MPoly::constant(a)) * (MPoly::constant(b) - t));
    if (ok) {
      ok = sr.form.equals(expected) && sr.gamma == expect0;
      detail = ok ? "residue matches the segment form, endpoint residues +-1"
                  : "residue mismatch: " + sr.form.str();
    }
    report.strata.push_back({1, {i}, ok, detail});
    if (!ok) report.pass = false;
    srs.push_back(std::move(sr));
  }
  for (int i = 0; i < r; ++i) {
    const int j = (i + 1) % r;
    const Rat rb = srs[i].form.residue_at(q.intervals[i].second);
    const Rat ra = srs[j].form.residue_at(q.intervals[j].first);
    const bool ok = rb == -expect0 && ra == expect0;
    report.strata.push_back({0, {i, j}, ok,
                             "iterated residues " + rb.str() + " / " + ra.str() +
                                 (ok ? " (antisymmetric)" : " (inconsistent)")});
    if (!ok) report.pass = false;
  }
  return report;
}

Polypol transform_polypol(const Polypol& p, const RatMatrix& M) {
  const auto Minv = M.inverse();
  if (!Minv) throw DomainError("BadMatrix", "coordinate change must be invertible");
  std::map<std::string, MPoly> repl;
  for (int i = 0; i < 3; ++i) {
    MPoly img(kXYZ);
    for (int j = 0; j < 3; ++j)
      if (!Minv->at(i, j).is_zero()) img += Minv->at(i, j) * MPoly::variable(kXYZ[j]);
    repl.emplace(kXYZ[i], img.with_vars(kXYZ));
  }
  std::vector<PlaneCurve> curves;
  const std::vector<std::string> xyz = kXYZ;
  for (const auto& c : p.curves) {
    PlaneCurve nc;
    nc.f = c.f.with_vars(kXYZ).substitute(repl, &xyz);
    if (c.param) {
      std::vector<MPoly> comp = {c.param->r, c.param->s, c.param->h};
      CurveParam np;
      MPoly* out[3] = {&np.r, &np.s, &np.h};
      for (int i = 0; i < 3; ++i) {
        MPoly acc({kT});
        for (int j = 0; j < 3; ++j)
          if (!M.at(i, j).is_zero()) acc += M.at(i, j) * comp[j].with_vars({kT});
        *out[i] = acc;
      }
      nc.param = np;
    }
    for (const auto& q : c.nodes) nc.nodes.push_back(M.apply(q));
    curves.push_back(std::move(nc));
  }
  std::vector<std::vector<Rat>> verts;
  for (const auto& v : p.vertices) verts.push_back(M.apply(v));
  return validate_polypol(std::move(curves), std::move(verts));
}

}  // namespace posgeom
