#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "posgeom/io.hpp"
#include "posgeom/parser.hpp"
#include "posgeom/polytope.hpp"

namespace testutil {

using namespace posgeom;

inline std::string fixture_path(const std::string& name) {
  return std::string(POSGEOM_FIXTURES) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Polytope load_polytope(const std::string& fixture) {
  return vertices_from_hrep(parse_polytope_json(slurp(fixture_path(fixture))));
}

inline PolypolInput load_polypol_input(const std::string& fixture) {
  return parse_polypol_json(slurp(fixture_path(fixture)));
}

inline MPoly P(const std::string& s) { return parse_poly(s); }

inline MPoly P(const std::string& s, const std::vector<std::string>& vars) {
  return parse_poly(s, vars);
}

inline std::vector<Rat> rats(const std::vector<long>& v) {
  std::vector<Rat> out;
  for (long x : v) out.push_back(Rat(x));
  return out;
}

// Independent naive vertex enumeration used as an oracle: plain rational
// Gaussian elimination per d-subset, no Bareiss, no incidence machinery.
inline std::vector<std::vector<Rat>> naive_vertices(const std::vector<std::vector<Rat>>& U,
                                                    const std::vector<Rat>& z) {
  const int n = static_cast<int>(U.size());
  const int d = static_cast<int>(U[0].size());
  std::vector<std::vector<Rat>> found;
  std::vector<int> pick(d);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == d) {
      // Solve U[pick] v = -z[pick] by Gaussian elimination with rationals.
      std::vector<std::vector<Rat>> A(d, std::vector<Rat>(d + 1));
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) A[i][j] = U[pick[i]][j];
        A[i][d] = -z[pick[i]];
      }
      for (int c = 0; c < d; ++c) {
        int piv = -1;
        for (int r2 = c; r2 < d; ++r2)
          if (!A[r2][c].is_zero()) { piv = r2; break; }
        if (piv < 0) return;
        std::swap(A[c], A[piv]);
        for (int r2 = 0; r2 < d; ++r2) {
          if (r2 == c || A[r2][c].is_zero()) continue;
          const Rat m = A[r2][c] / A[c][c];
          for (int cc = c; cc <= d; ++cc) A[r2][cc] -= m * A[c][cc];
        }
      }
      std::vector<Rat> v(d);
      for (int i = 0; i < d; ++i) v[i] = A[i][d] / A[i][i];
      for (int i = 0; i < n; ++i) {
        Rat s = z[i];
        for (int j = 0; j < d; ++j) s += U[i][j] * v[j];
        if (s < Rat(0)) return;
      }
      for (const auto& w : found)
        if (w == v) return;
      found.push_back(std::move(v));
      return;
    }
    for (int i = start; i < n; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  std::sort(found.begin(), found.end(), lex_less);
  return found;
}

// Uniform random rational with numerator in [-m, m] and denominator in [1, q].
inline Rat random_rat(std::mt19937& rng, int m = 6, int q = 3) {
  std::uniform_int_distribution<int> num(-m, m), den(1, q);
  return Rat(num(rng), den(rng));
}

inline MPoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars, int max_deg,
                         int terms) {
  MPoly p(vars);
  std::uniform_int_distribution<int> e(0, max_deg);
  for (int t = 0; t < terms; ++t) {
    MPoly mono = MPoly::constant(random_rat(rng));
    int budget = max_deg;
    for (const auto& v : vars) {
      const int k = std::min(budget, e(rng) % (max_deg + 1));
      budget -= k;
      mono = mono * MPoly::variable(v).pow(k);
    }
    p += mono.with_vars(vars);
  }
  return p;
}

}  // namespace testutil
