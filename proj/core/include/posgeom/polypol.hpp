#pragma once

#include <optional>
#include <string>
#include <vector>

#include "posgeom/canonical.hpp"
#include "posgeom/forms.hpp"

namespace posgeom {

// Irreducible plane curve f(x,y,z) = 0 with an optional rational
// parametrization t -> (r(t) : s(t) : h(t)) and its declared nodes.
// Irreducibility is asserted by the caller and spot-checked (coordinate
// forms, rational linear factors, conic nondegeneracy).
struct PlaneCurve {
  MPoly f;  // homogeneous in (x, y, z)
  std::optional<CurveParam> param;
  std::vector<std::vector<Rat>> nodes;  // homogeneous rational points
  int degree() const { return f.total_degree(); }
};

// Boundary curves Y_1..Y_r with the cyclic vertices; vertices[i] is
// v_{i+1,i+2} in 1-based cyclic labels, i.e. it lies on curves i and i+1 mod r.
struct Polypol {
  std::vector<PlaneCurve> curves;
  std::vector<std::vector<Rat>> vertices;  // homogeneous, normalized
  int total_degree() const;
};

// Parameter intervals per curve: phi_i(a_i) = v_{i-1,i}, phi_i(b_i) = v_{i,i+1}.
struct QuasiRegularPolypol {
  Polypol polypol;
  std::vector<std::pair<Rat, Rat>> intervals;
};

// Conjugate-parameter condition block: the adjoint must vanish at phi_i(t)
// for every root of the (irreducible over Q, squarefree) minimal polynomial.
struct ConjugateBlock {
  int curve = 0;  // 0-based
  MPoly minpoly;  // in t
};

struct ResidualArrangement {
  struct Point {
    std::vector<Rat> coords;  // homogeneous, normalized
    std::string kind;         // "node(i)" or "intersection(i,j)" or "extra"
  };
  std::vector<Point> points;
  std::vector<ConjugateBlock> blocks;  // validated user blocks
  int unresolved = 0;  // intersection-parameter degree not covered by blocks
};

// Checks every polypol condition exactly: vertex membership, smoothness,
// transversality, parametrization consistency, curve distinctness.
Polypol validate_polypol(std::vector<PlaneCurve> curves,
                         std::vector<std::vector<Rat>> vertices);

QuasiRegularPolypol validate_quasi_regular(Polypol p,
                                           std::vector<std::pair<Rat, Rat>> intervals);

ResidualArrangement residual_arrangement(
    const Polypol& p, const std::vector<std::vector<Rat>>& extra_points = {},
    const std::vector<ConjugateBlock>& blocks = {});

// Unique adjoint curve of degree n-3 through the residual arrangement
// (Thm: nodal rational polypols have exactly one). Normalized primitive with
// positive leading coefficient.
MPoly adjoint_curve(const Polypol& p, const std::vector<std::vector<Rat>>& extra_points = {},
                    const std::vector<ConjugateBlock>& blocks = {});

struct SegmentResidue {
  OneFormOnLine form;  // fully reduced pullback of the residue along Y_i
  Rat beta;            // form == beta / ((t-a)(b-t)) dt
  Rat gamma;           // beta / (b - a) == residue at a
  int raw_num_degree = 0;  // degrees before cancellation, (n-1)n_i - 2 generically
  int raw_den_degree = 0;  // with the (t-a)(b-t) factor removed
};

// Residue of `candidate` along curve i, pulled back through phi_i and
// certified to be a constant multiple of the segment form.
SegmentResidue segment_residue(const QuasiRegularPolypol& q, int i, const RatForm& candidate);

struct PolypolCanonical {
  RatForm form;  // alpha * adj / (f_1 ... f_r) dx^dy in the chart z = 1
  Rat alpha;
  MPoly adjoint;  // homogeneous, degree n-3
};

// Canonical form of a nodal quasi-regular rational polypol, normalized so
// the first segment's a-residue is +1 (negated when flip is set).
PolypolCanonical canonical_form_polypol(const QuasiRegularPolypol& q, bool flip = false,
                                        const std::vector<std::vector<Rat>>& extra_points = {},
                                        const std::vector<ConjugateBlock>& blocks = {});

// Per-curve and per-vertex residue verification of the polypol axioms.
VerifyReport verify_polypol_geometry(const QuasiRegularPolypol& q, bool flip = false,
                                     const std::vector<std::vector<Rat>>& extra_points = {},
                                     const std::vector<ConjugateBlock>& blocks = {});

// Applies a projective change of coordinates w = M (x,y,z)^T to all data.
Polypol transform_polypol(const Polypol& p, const RatMatrix& M);

std::vector<Rat> normalize_homogeneous(std::vector<Rat> v);

}  // namespace posgeom
