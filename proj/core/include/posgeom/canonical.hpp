#pragma once

#include <string>
#include <vector>

#include "posgeom/forms.hpp"
#include "posgeom/polytope.hpp"

namespace posgeom {

// Chart variables y1..yd used for polytope canonical forms.
std::vector<std::string> default_chart_vars(int d);

// Canonical form of a polytope as a single fraction over the facet forms.
struct CanonicalFormResult {
  RatForm form;                           // in chart y1..yd
  MPoly numerator;                        // combined fraction's numerator
  std::vector<MPoly> denominator_factors; // the facet linear forms
};

// The vertex-sum formula for simple polytopes:
//   w(P) = sum_v |det U_v| / prod_{F ni v} (u_F.y + z_F) dy.
CanonicalFormResult canonical_form_simple(const Polytope& P);

// y -> vol((P-y)°) as an exact rational function; works for non-simple
// polytopes by triangulating each vertex's normal cone with its incident
// facet rays (pulling from the lowest facet index, no new rays).
FactoredRatFn dual_volume_function(const Polytope& P);

// Vertex sum in one formal variable per facet.
struct Amplitude {
  struct Term {
    Rat det_abs;
    std::vector<int> facets;  // size d, sorted
  };
  std::vector<Term> terms;          // one per vertex
  std::vector<std::string> names;   // facet variable names, row order

  // sum |det U_v| / prod x_F as a rational function in the facet variables.
  FactoredRatFn as_rational() const;
  // substitute x_F <- u_F.y + z_F, reproducing the canonical form coefficient.
  FactoredRatFn substituted(const Polytope& P, const std::vector<std::string>& vars) const;
  std::string str() const;
};
Amplitude toric_amplitude(const Polytope& P, std::vector<std::string> names = {});

// Adj_P(x) = sum_v |det U_v| prod_{F not ni v} x_F, homogeneous of degree n-d.
struct UniversalAdjoint {
  MPoly poly;
  std::vector<std::string> names;
};
UniversalAdjoint universal_adjoint(const Polytope& P, std::vector<std::string> names = {});

// adj_P(y) = Adj_P(U.y + z y0) / y0, homogeneous of degree n-d-1 in y0..yd.
// Non-simple polytopes go through the dual volume function's numerator.
struct WarrenAdjoint {
  MPoly poly;  // in y0, y1, ..., yd
};
WarrenAdjoint warren_adjoint(const Polytope& P);

// sum of the Theorem-2.1 forms of a pulling triangulation; spurious
// internal-wall poles cancel in the combined fraction.
CanonicalFormResult canonical_form_via_triangulation(const Polytope& P);

// Recursive residue verification of the positive-geometry axioms, one entry
// per boundary stratum (deduplicated across paths).
struct VerifyReport {
  struct Stratum {
    int dim;                  // dimension of the stratum
    std::vector<int> facets;  // original facet rows cutting it
    bool pass;
    std::string detail;
  };
  std::vector<Stratum> strata;
  bool pass = true;
};
VerifyReport verify_positive_geometry(const Polytope& P);

// Unique curve of degree n-d-1 through the residual arrangement (d = 2,
// simple facet line arrangement). Normalized primitive with positive value
// at the homogenized vertex centroid.
MPoly adjoint_through_residual_points(const Polytope& P);

}  // namespace posgeom
