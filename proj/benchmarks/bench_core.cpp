#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

#include "posgeom/canonical.hpp"
#include "posgeom/io.hpp"
#include "posgeom/polypol.hpp"

using namespace posgeom;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(POSGEOM_FIXTURES) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Polytope fixture(const std::string& name) {
  return vertices_from_hrep(parse_polytope_json(slurp(name)));
}

MPoly random_poly(std::mt19937& rng, int vars, int deg, int terms) {
  std::vector<std::string> vs;
  for (int i = 0; i < vars; ++i) vs.push_back("x" + std::to_string(i));
  MPoly p(vs);
  std::uniform_int_distribution<int> c(-9, 9), e(0, deg);
  for (int t = 0; t < terms; ++t) {
    MPoly mono = MPoly::constant(Rat(c(rng)));
    for (const auto& v : vs) mono = mono * MPoly::variable(v).pow(e(rng));
    p += mono.with_vars(vs);
  }
  return p;
}

void BM_mpoly_mul(benchmark::State& state) {
  std::mt19937 rng(1);
  const MPoly a = random_poly(rng, 3, 4, 24);
  const MPoly b = random_poly(rng, 3, 4, 24);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_mpoly_mul);

void BM_vertex_enumeration_assoc3d(benchmark::State& state) {
  const HRep h = parse_polytope_json(slurp("assoc3d.json"));
  for (auto _ : state) benchmark::DoNotOptimize(vertices_from_hrep(h));
}
BENCHMARK(BM_vertex_enumeration_assoc3d);

void BM_canonical_form_assoc3d(benchmark::State& state) {
  const Polytope P = fixture("assoc3d.json");
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form_simple(P));
}
BENCHMARK(BM_canonical_form_assoc3d);

void BM_verify_assoc3d(benchmark::State& state) {
  const Polytope P = fixture("assoc3d.json");
  for (auto _ : state) benchmark::DoNotOptimize(verify_positive_geometry(P));
}
BENCHMARK(BM_verify_assoc3d);

void BM_nullspace_30x30(benchmark::State& state) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> c(-20, 20);
  RatMatrix m(30, 33);
  for (int i = 0; i < 30; ++i)
    for (int j = 0; j < 33; ++j) m.at(i, j) = Rat(c(rng), 1 + (c(rng) & 3));
  for (auto _ : state) benchmark::DoNotOptimize(m.nullspace());
}
BENCHMARK(BM_nullspace_30x30);

void BM_pizza_canonical(benchmark::State& state) {
  PolypolInput in = parse_polypol_json(slurp("pizza.json"));
  const Polypol p = validate_polypol(in.curves, in.vertices);
  const QuasiRegularPolypol q = validate_quasi_regular(p, in.intervals);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form_polypol(q));
}
BENCHMARK(BM_pizza_canonical);

}  // namespace

BENCHMARK_MAIN();
