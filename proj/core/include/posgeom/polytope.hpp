#pragma once

#include <string>
#include <vector>

#include "posgeom/linalg.hpp"
#include "posgeom/mpoly.hpp"

namespace posgeom {

// Inequality description P = {y : U y + z >= 0}. Rows are inward facet
// normals once validated (rank d, bounded, minimal).
struct HRep {
  RatMatrix U;
  std::vector<Rat> z;
  int dim() const { return U.cols(); }
  int n() const { return U.rows(); }
};

// Polytope with exact vertices and full vertex-facet incidence. Vertices are
// sorted lexicographically; incidence sets are sorted facet indices.
struct Polytope {
  HRep hrep;
  std::vector<std::vector<Rat>> vertices;
  std::vector<std::vector<int>> incidence;

  int dim() const { return hrep.dim(); }
  int facet_count() const { return hrep.n(); }
  // The linear form u_F . y + z_F over the given chart variables.
  MPoly facet_form(int F, const std::vector<std::string>& vars) const;
  std::vector<Rat> vertex_centroid() const;
  // Submatrix U_v of rows incident to vertex k (square iff the vertex is
  // simple).
  RatMatrix incident_rows(int k) const;
};

struct Simplex {
  std::vector<std::vector<Rat>> verts;  // d+1 points
  int orientation = 1;                  // sign of det(v1-v0, ..., vd-v0)
};

// A residual flat L_S: facet subset S with empty intersection with P, stored
// as a basis of its projective span in homogeneous coordinates
// (y0 : y1 : ... : yd).
struct ResidualFlat {
  std::vector<int> facets;
  std::vector<std::vector<Rat>> span;  // basis vectors, length d+1
  bool at_infinity = false;            // the whole flat lies in {y0 = 0}
};

// Brute-force exact vertex enumeration over all d-subsets of rows.
// Throws NotFullRank, Unbounded, EmptyPolytope, LowerDimensional,
// RedundantInequality.
Polytope vertices_from_hrep(const HRep& h);

// Every vertex lies on exactly d facets.
bool is_simple(const Polytope& P);

// Polar dual P° = {u : u.y >= -1 on P}; requires 0 strictly interior.
Polytope polar_dual(const Polytope& P);

// d! times the Euclidean volume, exactly.
Rat normalized_volume(const Polytope& P);

// Pulling triangulation from the lexicographically smallest vertex.
std::vector<Simplex> triangulate(const Polytope& P);

// P - y, with H-rep (U, U y + z).
Polytope translate(const Polytope& P, const std::vector<Rat>& y);

// Residual flats: facet subsets S (2 <= |S| <= d) with independent normals
// and no incident vertex, plus (d = 2) the points at infinity of parallel
// facet pairs. Flats at infinity for d >= 3 beyond common intersections of
// the listed hyperplanes are not enumerated.
std::vector<ResidualFlat> residual_flats(const Polytope& P);

// Minimal H-representation of the convex hull of a full-dimensional point
// set, by brute-force facet search. Rows are primitive integer vectors,
// deterministically ordered.
HRep hrep_from_vertices(const std::vector<std::vector<Rat>>& pts);

// Pulling triangulation of a point configuration (all points extreme); the
// pull point is the lowest index. Returns index simplices.
std::vector<std::vector<int>> pulling_triangulation(const std::vector<std::vector<Rat>>& pts);

// H-rep of a single full-dimensional simplex.
HRep simplex_hrep(const Simplex& s);

Rat simplex_det(const Simplex& s);  // det(v1-v0, ..., vd-v0)

}  // namespace posgeom
