#include "posgeom/polytope.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "posgeom/errors.hpp"

namespace posgeom {

namespace {

// All k-subsets of {0..n-1} in lexicographic order.
void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k > n || k < 0) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

RatMatrix submatrix_rows(const RatMatrix& M, const std::vector<int>& rows) {
  RatMatrix S(static_cast<int>(rows.size()), M.cols());
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < M.cols(); ++j) S.at(static_cast<int>(i), j) = M.at(rows[i], j);
  return S;
}

// Affine rank of a point set (dimension of the affine hull).
int affine_rank(const std::vector<std::vector<Rat>>& pts) {
  if (pts.empty()) return -1;
  RatMatrix D(static_cast<int>(pts.size()) - 1, static_cast<int>(pts[0].size()));
  for (size_t i = 1; i < pts.size(); ++i)
    for (size_t j = 0; j < pts[0].size(); ++j)
      D.at(static_cast<int>(i) - 1, static_cast<int>(j)) = pts[i][j] - pts[0][j];
  return D.rank();
}

// Coordinates of pts in an exact affine chart of their affine hull.
std::vector<std::vector<Rat>> chart_coordinates(const std::vector<std::vector<Rat>>& pts,
                                                int hull_dim) {
  const int m = static_cast<int>(pts[0].size());
  // Greedy affinely independent basis of differences.
  std::vector<std::vector<Rat>> basis;
  for (size_t i = 1; i < pts.size() && static_cast<int>(basis.size()) < hull_dim; ++i) {
    std::vector<Rat> d(m);
    for (int j = 0; j < m; ++j) d[j] = pts[i][j] - pts[0][j];
    basis.push_back(d);
    if (RatMatrix::from_rows(basis).rank() < static_cast<int>(basis.size())) basis.pop_back();
  }
  if (static_cast<int>(basis.size()) != hull_dim)
    throw DomainError("Internal", "affine chart construction failed");
  // Solve B^T c = p - p0 in the least-square-free exact sense: pick hull_dim
  // independent coordinate rows of B^T.
  RatMatrix Bt(m, hull_dim);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < hull_dim; ++j) Bt.at(i, j) = basis[j][i];
  // Select independent rows.
  std::vector<int> rows;
  for (int i = 0; i < m && static_cast<int>(rows.size()) < hull_dim; ++i) {
    rows.push_back(i);
    if (submatrix_rows(Bt, rows).rank() < static_cast<int>(rows.size())) rows.pop_back();
  }
  const RatMatrix S = submatrix_rows(Bt, rows);
  std::vector<std::vector<Rat>> out;
  for (const auto& p : pts) {
    std::vector<Rat> rhs(hull_dim);
    for (int i = 0; i < hull_dim; ++i) rhs[i] = p[rows[i]] - pts[0][rows[i]];
    auto c = S.solve(rhs);
    if (!c) throw DomainError("Internal", "affine chart solve failed");
    out.push_back(std::move(*c));
  }
  return out;
}

// Facets of a full-dimensional point configuration in R^k, as sorted index
// sets, by brute force over k-subsets.
std::vector<std::vector<int>> brute_force_facets(const std::vector<std::vector<Rat>>& pts) {
  const int k = static_cast<int>(pts[0].size());
  const int n = static_cast<int>(pts.size());
  std::set<std::vector<int>> facets;
  if (k == 0) return {};
  for_each_subset(n, k, [&](const std::vector<int>& idx) {
    // Hyperplane through the chosen points: normal in the kernel of the
    // difference matrix.
    RatMatrix D(k - 1, k);
    for (int i = 1; i < k; ++i)
      for (int j = 0; j < k; ++j) D.at(i - 1, j) = pts[idx[i]][j] - pts[idx[0]][j];
    auto ker = D.nullspace();
    if (ker.size() != 1) return;
    const std::vector<Rat>& u = ker[0];
    Rat z(0);
    for (int j = 0; j < k; ++j) z -= u[j] * pts[idx[0]][j];
    // Side classification of every point.
    bool pos = false, neg = false;
    std::vector<int> on;
    for (int p = 0; p < n; ++p) {
      Rat v = z;
      for (int j = 0; j < k; ++j) v += u[j] * pts[p][j];
      if (v.is_zero())
        on.push_back(p);
      else
        (v > Rat(0) ? pos : neg) = true;
    }
    if (pos && neg) return;
    facets.insert(on);
  });
  return {facets.begin(), facets.end()};
}

// Recursive pulling triangulation on chart coordinates; emits simplices as
// global index tuples [pull, facet simplex...].
void pull_recurse(const std::vector<std::vector<Rat>>& all_pts,
                  const std::vector<int>& subset, std::vector<std::vector<int>>* out) {
  std::vector<std::vector<Rat>> pts;
  for (int i : subset) pts.push_back(all_pts[i]);
  const int dim = affine_rank(pts);
  if (static_cast<int>(subset.size()) == dim + 1) {
    out->push_back(subset);
    return;
  }
  const auto chart = chart_coordinates(pts, dim);
  const int pull = 0;  // lowest index in `subset` (callers keep it sorted)
  const auto facets = brute_force_facets(chart);
  for (const auto& f : facets) {
    if (std::find(f.begin(), f.end(), pull) != f.end()) continue;
    std::vector<int> sub_global;
    for (int i : f) sub_global.push_back(subset[i]);
    std::vector<std::vector<int>> pieces;
    pull_recurse(all_pts, sub_global, &pieces);
    for (auto& s : pieces) {
      std::vector<int> simplex;
      simplex.push_back(subset[pull]);
      simplex.insert(simplex.end(), s.begin(), s.end());
      out->push_back(std::move(simplex));
    }
  }
}

}  // namespace

MPoly Polytope::facet_form(int F, const std::vector<std::string>& vars) const {
  MPoly f = MPoly::constant(hrep.z[F]).with_vars(vars);
  for (int j = 0; j < dim(); ++j)
    if (!hrep.U.at(F, j).is_zero()) f += hrep.U.at(F, j) * MPoly::variable(vars[j]);
  return f.with_vars(vars);
}

std::vector<Rat> Polytope::vertex_centroid() const {
  std::vector<Rat> c(dim(), Rat(0));
  for (const auto& v : vertices)
    for (int j = 0; j < dim(); ++j) c[j] += v[j];
  const Rat k(static_cast<long>(vertices.size()));
  for (auto& x : c) x /= k;
  return c;
}

RatMatrix Polytope::incident_rows(int k) const {
  return submatrix_rows(hrep.U, incidence[k]);
}

Polytope vertices_from_hrep(const HRep& h) {
  const int n = h.n(), d = h.dim();
  if (static_cast<int>(h.z.size()) != n)
    throw DomainError("BadMatrix", "z length must match row count");
  if (h.U.rank() < d) throw DomainError("NotFullRank", "U must have rank d");

  // Boundedness: the recession cone {c : U c >= 0} is pointed (rank d), so it
  // is nonzero iff it has an extreme ray, cut out by d-1 independent rows.
  auto is_recession_dir = [&](const std::vector<Rat>& c) {
    for (int i = 0; i < n; ++i) {
      Rat s(0);
      for (int j = 0; j < d; ++j) s += h.U.at(i, j) * c[j];
      if (s < Rat(0)) return false;
    }
    return true;
  };
  bool unbounded = false;
  for_each_subset(n, d - 1, [&](const std::vector<int>& idx) {
    if (unbounded) return;
    auto ker = submatrix_rows(h.U, idx).nullspace();
    if (ker.size() != 1) return;
    std::vector<Rat> neg(d);
    for (int j = 0; j < d; ++j) neg[j] = -ker[0][j];
    if (is_recession_dir(ker[0]) || is_recession_dir(neg)) unbounded = true;
  });
  if (unbounded) throw DomainError("Unbounded", "recession cone is nonzero");

  std::vector<std::vector<Rat>> verts;
  for_each_subset(n, d, [&](const std::vector<int>& idx) {
    const RatMatrix Uv = submatrix_rows(h.U, idx);
    std::vector<Rat> rhs(d);
    for (int i = 0; i < d; ++i) rhs[i] = -h.z[idx[i]];
    auto v = Uv.solve(rhs);
    if (!v) return;
    for (int i = 0; i < n; ++i) {
      Rat s = h.z[i];
      for (int j = 0; j < d; ++j) s += h.U.at(i, j) * (*v)[j];
      if (s < Rat(0)) return;
    }
    verts.push_back(std::move(*v));
  });
  std::sort(verts.begin(), verts.end(), lex_less);
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  if (verts.empty()) throw DomainError("EmptyPolytope", "no feasible vertex");
  if (affine_rank(verts) < d)
    throw DomainError("LowerDimensional", "polytope is not full-dimensional");

  Polytope P{h, std::move(verts), {}};
  P.incidence.resize(P.vertices.size());
  for (size_t k = 0; k < P.vertices.size(); ++k)
    for (int i = 0; i < n; ++i) {
      Rat s = h.z[i];
      for (int j = 0; j < d; ++j) s += h.U.at(i, j) * P.vertices[k][j];
      if (s.is_zero()) P.incidence[k].push_back(i);
    }

  // Minimality: every inequality must support a (d-1)-dimensional facet, and
  // no two rows may cut the same facet.
  std::vector<std::vector<int>> on_row(n);
  for (size_t k = 0; k < P.vertices.size(); ++k)
    for (int i : P.incidence[k]) on_row[i].push_back(static_cast<int>(k));
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<Rat>> pts;
    for (int k : on_row[i]) pts.push_back(P.vertices[k]);
    if (pts.empty() || affine_rank(pts) != d - 1)
      throw DomainError("RedundantInequality",
                        "inequality " + std::to_string(i) + " does not support a facet");
    for (int j = 0; j < i; ++j)
      if (on_row[j] == on_row[i])
        throw DomainError("RedundantInequality",
                          "inequalities " + std::to_string(j) + " and " + std::to_string(i) +
                              " cut the same facet");
  }
  return P;
}

bool is_simple(const Polytope& P) {
  for (const auto& inc : P.incidence)
    if (static_cast<int>(inc.size()) != P.dim()) return false;
  return true;
}

Polytope polar_dual(const Polytope& P) {
  for (const auto& zf : P.hrep.z)
    if (!(zf > Rat(0)))
      throw DomainError("OriginNotInterior", "polar dual requires all z_F > 0");
  const int d = P.dim();
  RatMatrix U(static_cast<int>(P.vertices.size()), d);
  for (size_t i = 0; i < P.vertices.size(); ++i)
    for (int j = 0; j < d; ++j) U.at(static_cast<int>(i), j) = P.vertices[i][j];
  HRep h{std::move(U), std::vector<Rat>(P.vertices.size(), Rat(1))};
  return vertices_from_hrep(h);
}

std::vector<std::vector<int>> pulling_triangulation(const std::vector<std::vector<Rat>>& pts) {
  std::vector<int> all(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) all[i] = static_cast<int>(i);
  std::vector<std::vector<int>> out;
  pull_recurse(pts, all, &out);
  std::sort(out.begin(), out.end());
  return out;
}

Rat simplex_det(const Simplex& s) {
  const int d = static_cast<int>(s.verts.size()) - 1;
  RatMatrix D(d, d);
  for (int i = 1; i <= d; ++i)
    for (int j = 0; j < d; ++j) D.at(i - 1, j) = s.verts[i][j] - s.verts[0][j];
  return D.det();
}

std::vector<Simplex> triangulate(const Polytope& P) {
  // Vertices are stored sorted, so index 0 is the lexicographically smallest
  // vertex and pulling_triangulation pulls from it.
  std::vector<Simplex> out;
  for (const auto& idx : pulling_triangulation(P.vertices)) {
    Simplex s;
    for (int i : idx) s.verts.push_back(P.vertices[i]);
    const Rat det = simplex_det(s);
    s.orientation = det > Rat(0) ? 1 : -1;
    out.push_back(std::move(s));
  }
  return out;
}

Rat normalized_volume(const Polytope& P) {
  Rat vol(0);
  for (const auto& s : triangulate(P)) vol += simplex_det(s).abs();
  return vol;
}

Polytope translate(const Polytope& P, const std::vector<Rat>& y) {
  Polytope Q = P;
  const std::vector<Rat> uy = P.hrep.U.apply(y);
  for (int i = 0; i < P.facet_count(); ++i) Q.hrep.z[i] = P.hrep.z[i] + uy[i];
  for (auto& v : Q.vertices)
    for (int j = 0; j < P.dim(); ++j) v[j] -= y[j];
  // Re-sort; incidence travels with the vertices.
  std::vector<size_t> order(Q.vertices.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return lex_less(Q.vertices[a], Q.vertices[b]); });
  Polytope R{Q.hrep, {}, {}};
  for (size_t i : order) {
    R.vertices.push_back(Q.vertices[i]);
    R.incidence.push_back(P.incidence[i]);
  }
  return R;
}

std::vector<ResidualFlat> residual_flats(const Polytope& P) {
  const int n = P.facet_count(), d = P.dim();
  std::vector<ResidualFlat> out;
  auto has_incident_vertex = [&](const std::vector<int>& S) {
    for (const auto& inc : P.incidence)
      if (std::includes(inc.begin(), inc.end(), S.begin(), S.end())) return true;
    return false;
  };
  for (int k = 2; k <= d; ++k) {
    for_each_subset(n, k, [&](const std::vector<int>& S) {
      if (submatrix_rows(P.hrep.U, S).rank() != k) return;
      if (has_incident_vertex(S)) return;
      // Projective span: kernel of the rows (z_F | u_F).
      RatMatrix M(k, d + 1);
      for (int i = 0; i < k; ++i) {
        M.at(i, 0) = P.hrep.z[S[i]];
        for (int j = 0; j < d; ++j) M.at(i, j + 1) = P.hrep.U.at(S[i], j);
      }
      ResidualFlat f{S, M.nullspace(), false};
      f.at_infinity = true;
      for (const auto& v : f.span)
        if (!v[0].is_zero()) f.at_infinity = false;
      out.push_back(std::move(f));
    });
  }
  if (d == 2) {
    // Parallel facet pairs meet at a point on the line at infinity.
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        std::vector<std::vector<Rat>> rows = {P.hrep.U.row(i), P.hrep.U.row(j)};
        if (RatMatrix::from_rows(rows).rank() != 1) continue;
        ResidualFlat f{{i, j}, {}, true};
        f.span.push_back({Rat(0), -P.hrep.U.at(i, 1), P.hrep.U.at(i, 0)});
        out.push_back(std::move(f));
      }
  }
  return out;
}

HRep hrep_from_vertices(const std::vector<std::vector<Rat>>& pts) {
  if (pts.empty()) throw DomainError("EmptyPolytope", "no points");
  const int d = static_cast<int>(pts[0].size());
  if (affine_rank(pts) != d)
    throw DomainError("LowerDimensional", "point set is not full-dimensional");
  struct Row {
    std::vector<Rat> u;
    Rat z;
  };
  std::vector<Row> rows;
  if (d == 0) throw DomainError("LowerDimensional", "zero-dimensional hull");
  for (const auto& fi : brute_force_facets(pts)) {
    // Normal of the facet's affine hull.
    std::vector<std::vector<Rat>> fpts;
    for (int i : fi) fpts.push_back(pts[i]);
    RatMatrix D(static_cast<int>(fpts.size()) - 1, d);
    for (size_t i = 1; i < fpts.size(); ++i)
      for (int j = 0; j < d; ++j)
        D.at(static_cast<int>(i) - 1, j) = fpts[i][j] - fpts[0][j];
    auto ker = D.nullspace();
    if (ker.size() != 1) throw DomainError("Internal", "facet normal not unique");
    std::vector<Rat> u = ker[0];
    Rat z(0);
    for (int j = 0; j < d; ++j) z -= u[j] * fpts[0][j];
    // Orient inward: positive on some point off the facet.
    for (const auto& p : pts) {
      Rat v = z;
      for (int j = 0; j < d; ++j) v += u[j] * p[j];
      if (v.is_zero()) continue;
      if (v < Rat(0)) {
        for (auto& x : u) x = -x;
        z = -z;
      }
      break;
    }
    rows.push_back({std::move(u), std::move(z)});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.u != b.u) return lex_less(a.u, b.u);
    return a.z < b.z;
  });
  RatMatrix U(static_cast<int>(rows.size()), d);
  std::vector<Rat> z(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < d; ++j) U.at(static_cast<int>(i), j) = rows[i].u[j];
    z[i] = rows[i].z;
  }
  return HRep{std::move(U), std::move(z)};
}

HRep simplex_hrep(const Simplex& s) {
  return hrep_from_vertices(s.verts);
}

}  // namespace posgeom
