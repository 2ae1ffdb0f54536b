#pragma once

#include <string>
#include <vector>

#include "posgeom/canonical.hpp"
#include "posgeom/polypol.hpp"
#include "posgeom/polytope.hpp"

namespace posgeom {

enum class Format { Text, Json, Latex };

// {"U": [[...], ...], "z": [...]} with integers or "p/q" strings.
HRep parse_polytope_json(const std::string& text);

// {"curves": [{"f": "...", "param": ["r","s","h"], "nodes": [[x,y,z],...]}, ...],
//  "vertices": [[x,y,z],...], "intervals": [[a,b],...],
//  "extra_points": [[x,y,z],...], "conjugates": [{"curve": i, "minpoly": "..."}]}
// "param", "nodes", "intervals" and the last two keys are optional.
struct PolypolInput {
  std::vector<PlaneCurve> curves;
  std::vector<std::vector<Rat>> vertices;
  std::vector<std::pair<Rat, Rat>> intervals;  // empty if absent
  std::vector<std::vector<Rat>> extra_points;
  std::vector<ConjugateBlock> blocks;
};
PolypolInput parse_polypol_json(const std::string& text);

std::string emit_poly(const MPoly& p, Format f);
std::string emit_rat(const Rat& r, Format f);
std::string emit_ratfn(const FactoredRatFn& fn, Format f);
std::string emit_form(const RatForm& w, Format f);
std::string emit_one_form(const OneFormOnLine& w, Format f);

// Round-trip parsers for the textual serializations above.
FactoredRatFn parse_ratfn(const std::string& text,
                          const std::vector<std::string>& vars);
RatForm parse_form(const std::string& text);

}  // namespace posgeom
