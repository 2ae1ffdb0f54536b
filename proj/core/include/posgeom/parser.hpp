#pragma once

#include <optional>
#include <string>
#include <vector>

#include "posgeom/mpoly.hpp"

namespace posgeom {

// Parses the polynomial grammar used across CLI I/O and fixtures: explicit
// +, -, *, ^ with integer or p/q coefficients, e.g. "5 - 3*y1 + 3*y2 - y1*y2".
// Parentheses and unary minus are accepted as well. If `vars` is given, the
// result uses exactly that variable list (unknown identifiers are an error);
// otherwise variables are collected and sorted by name.
MPoly parse_poly(const std::string& text,
                 const std::optional<std::vector<std::string>>& vars = std::nullopt);

Rat parse_rat(const std::string& text);

}  // namespace posgeom
