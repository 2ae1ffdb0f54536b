#include <doctest.h>

#include "posgeom/errors.hpp"
#include "posgeom/linalg.hpp"
#include "posgeom/mpoly.hpp"
#include "posgeom/parser.hpp"
#include "posgeom/ratfn.hpp"
#include "test_util.hpp"

using namespace posgeom;
using testutil::P;

TEST_CASE("rat basics") {
  CHECK(Rat(3, 6) == Rat(1, 2));
  CHECK(Rat(-2, -4) == Rat(1, 2));
  CHECK(Rat(2, -4) == Rat(-1, 2));
  CHECK(Rat::from_string("7/21") == Rat(1, 3));
  CHECK(Rat(1, 3).str() == "1/3");
  CHECK(Rat(-5).str() == "-5");
  CHECK((Rat(1, 2) + Rat(1, 3)) == Rat(5, 6));
  CHECK(Rat(2, 3).pow(-2) == Rat(9, 4));
  CHECK_THROWS_AS(Rat(1, 2).inverse() / Rat(0), DomainError);
}

TEST_CASE("poly arithmetic and printing") {
  CHECK(P("x + 1") + P("x - 1") == P("2*x"));
  CHECK(P("(y1 + 1)*(-y2 + 1)") == P("-y1*y2 + y1 - y2 + 1"));
  CHECK(P("5 - 3*y1 + 3*y2 - y1*y2").str() == "5 - 3*y1 + 3*y2 - y1*y2");
  CHECK(P("x^2 - 1/2*x + 1/4").str() == "1/4 - 1/2*x + x^2");
  CHECK(P("0").is_zero());
  CHECK(P("x*y - y*x").is_zero());
  // variable alignment by name
  CHECK(P("x + y") == parse_poly("y + x", std::vector<std::string>{"y", "x"}));
}

TEST_CASE("pentagon facet product has value 1 at the origin") {
  // all z_F = 1, so the product of the five facet forms is 1 at y = 0
  const std::vector<std::string> v = {"y1", "y2"};
  MPoly prod = MPoly::constant(Rat(1)).with_vars(v);
  for (const auto& s :
       {"y1 + 1", "y2 + 1", "-y1 + y2 + 1", "-y1 + 1", "-y2 + 1"})
    prod = prod * P(s, v);
  CHECK(prod.total_degree() == 5);
  CHECK(prod.eval({Rat(0), Rat(0)}) == Rat(1));
}

TEST_CASE("exact division") {
  CHECK(*MPoly::exact_div(P("x^2 - y^2"), P("x - y")) == P("x + y"));
  CHECK(*MPoly::exact_div(P("(1 + x + y)*(1 - x - y)"), P("1 - x - y")) == P("1 + x + y"));
  CHECK(!MPoly::exact_div(P("x^2 + 1"), P("x + 1")));
  CHECK_THROWS_AS(MPoly::exact_div(P("x"), P("0")), DomainError);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(20240811);
  const std::vector<std::string> vars = {"a", "b", "c", "d"};
  for (int trial = 0; trial < 40; ++trial) {
    const MPoly a = testutil::random_poly(rng, vars, 6, 4);
    const MPoly b = testutil::random_poly(rng, vars, 6, 4);
    const MPoly c = testutil::random_poly(rng, vars, 6, 4);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a * b == b * a);
    CHECK(a + (b + c) == (a + b) + c);
  }
}

TEST_CASE("exact_div(a*b, b) == a on random polynomials") {
  std::mt19937 rng(7);
  const std::vector<std::string> vars = {"u", "v"};
  int nontrivial = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const MPoly a = testutil::random_poly(rng, vars, 4, 3);
    const MPoly b = testutil::random_poly(rng, vars, 4, 3);
    if (b.is_zero()) continue;
    auto q = MPoly::exact_div(a * b, b);
    REQUIRE(q.has_value());
    CHECK(*q == a);
    if (!a.is_zero()) ++nontrivial;
  }
  CHECK(nontrivial > 30);
}

TEST_CASE("nullspace") {
  CHECK(RatMatrix::identity(3).nullspace().empty());

  RatMatrix m(1, 2);
  m.at(0, 0) = Rat(1);
  m.at(0, 1) = Rat(-1);
  const auto basis = m.nullspace();
  REQUIRE(basis.size() == 1);
  CHECK(basis[0] == testutil::rats({1, 1}));

  // pentagon adjoint system: conics through 5 general-position points
  // (the residual points of the pentagon, cf. the canonical tests)
  const std::vector<std::vector<Rat>> pts = {
      testutil::rats({1, -1, -2}), testutil::rats({1, 1, -1}), testutil::rats({1, 2, 1}),
      testutil::rats({0, 0, 1}), testutil::rats({0, 1, 0})};
  RatMatrix sys(5, 6);
  for (int i = 0; i < 5; ++i) {
    const auto& p = pts[i];
    int col = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) sys.at(i, col++) = p[a] * p[b];
  }
  CHECK(sys.nullspace().size() == 1);
}

TEST_CASE("nullspace vectors satisfy M v = 0 exactly") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    std::uniform_int_distribution<int> dim(1, 6);
    const int r = dim(rng), c = dim(rng);
    RatMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m.at(i, j) = testutil::random_rat(rng, 4, 2);
    const auto basis = m.nullspace();
    CHECK(static_cast<int>(basis.size()) == c - m.rank());
    for (const auto& v : basis) {
      const auto mv = m.apply(v);
      for (const auto& x : mv) CHECK(x.is_zero());
    }
  }
}

TEST_CASE("determinant and solve") {
  RatMatrix m(2, 2);
  m.at(0, 0) = Rat(1); m.at(0, 1) = Rat(2);
  m.at(1, 0) = Rat(3); m.at(1, 1) = Rat(4);
  CHECK(m.det() == Rat(-2));
  const auto x = m.solve(testutil::rats({5, 11}));
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rat(1));
  CHECK((*x)[1] == Rat(2));
  const auto inv = m.inverse();
  REQUIRE(inv.has_value());
  CHECK((*inv * m) == RatMatrix::identity(2));

  RatMatrix s(2, 2);
  s.at(0, 0) = Rat(1); s.at(0, 1) = Rat(2);
  s.at(1, 0) = Rat(2); s.at(1, 1) = Rat(4);
  CHECK(s.det() == Rat(0));
  CHECK(!s.solve(testutil::rats({1, 1})).has_value());
}

TEST_CASE("rational roots") {
  const auto r1 = rational_roots(P("t^2 - t"));
  REQUIRE(r1.roots.size() == 2);
  CHECK(r1.roots[0] == std::pair<Rat, int>(Rat(0), 1));
  CHECK(r1.roots[1] == std::pair<Rat, int>(Rat(1), 1));
  CHECK(r1.cofactor_degree == 0);

  const auto r2 = rational_roots(P("t^2 - 2"));
  CHECK(r2.roots.empty());
  CHECK(r2.cofactor_degree == 2);

  // denominator of the circle-segment pullback
  const auto r3 = rational_roots(P("t*(t - 1)"));
  REQUIRE(r3.roots.size() == 2);
  CHECK(r3.cofactor_degree == 0);

  const auto r4 = rational_roots(P("6*t^3 - 5*t^2 - 2*t + 1"));
  REQUIRE(r4.roots.size() == 3);  // roots 1, 1/3, -1/2
  CHECK(r4.roots[0].first == Rat(-1, 2));
  CHECK(r4.roots[1].first == Rat(1, 3));
  CHECK(r4.roots[2].first == Rat(1));

  CHECK_THROWS_AS(rational_roots(P("0")), DomainError);
}

TEST_CASE("rational roots match exact division order") {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 20; ++trial) {
    // build a polynomial with known rational roots times an irrational factor
    const Rat r1 = testutil::random_rat(rng, 3, 2);
    const Rat r2 = testutil::random_rat(rng, 3, 2);
    const MPoly t = MPoly::variable("t");
    const MPoly p =
        (t - MPoly::constant(r1)) * (t - MPoly::constant(r1)) * (t - MPoly::constant(r2)) *
        P("t^2 + 1");
    const auto rr = rational_roots(p);
    CHECK(rr.cofactor_degree == 2);
    for (const auto& [root, mult] : rr.roots) {
      const MPoly lin = t - MPoly::constant(root);
      CHECK(MPoly::exact_div(p, lin.pow(mult)).has_value());
      CHECK(!MPoly::exact_div(p, lin.pow(mult + 1)).has_value());
    }
  }
}

TEST_CASE("univariate gcd") {
  CHECK(univariate_gcd(P("t^2 - 1"), P("t^2 - 2*t + 1"), "t") == P("t - 1"));
  CHECK(univariate_gcd(P("t^2 + 1"), P("t + 3"), "t") == P("1"));
}

TEST_CASE("factored rational functions maintain their invariants") {
  const std::vector<std::string> xy = {"x", "y"};
  // constant factors fold into the numerator
  const FactoredRatFn a(P("6", xy), {{P("2", xy), 1}, {P("x", xy), 1}});
  CHECK(a.denominator().size() == 1);
  CHECK(a.numerator() == P("3", xy));

  // proportional factors merge, with the scalar pulled out
  const FactoredRatFn b(P("4", xy), {{P("x", xy), 1}, {P("2*x", xy), 1}});
  REQUIRE(b.denominator().size() == 1);
  CHECK(b.denominator()[0].exp == 2);
  CHECK(b.numerator() == P("2", xy));

  // the numerator is cancelled against each factor
  const FactoredRatFn c(P("x^2 - y^2", xy), {{P("x - y", xy), 1}, {P("y", xy), 1}});
  CHECK(c.numerator() == P("x + y", xy));
  CHECK(c.denominator().size() == 1);

  // zero factors are an error; zero numerators clear the denominator
  CHECK_THROWS_AS(FactoredRatFn(P("1", xy), {{P("0", xy), 1}}), DomainError);
  CHECK(FactoredRatFn(P("0", xy), {{P("x", xy), 3}}).denominator().empty());

  const FactoredRatFn d(P("x^3*y - x", xy), {{P("x", xy), 2}});
  for (const auto& f : d.denominator()) {
    CHECK(!f.poly.is_constant());
    CHECK(!MPoly::exact_div(d.numerator(), f.poly).has_value());
  }
}

TEST_CASE("factored rational arithmetic agrees with pointwise evaluation") {
  std::mt19937 rng(13);
  const std::vector<std::string> xy = {"x", "y"};
  int checked = 0;
  while (checked < 15) {
    const MPoly n1 = testutil::random_poly(rng, xy, 3, 3);
    const MPoly n2 = testutil::random_poly(rng, xy, 3, 3);
    if (n1.is_zero() || n2.is_zero()) continue;
    const FactoredRatFn f(n1, {{P("x + 1", xy), 1}, {P("y - 2", xy), 1}});
    const FactoredRatFn g(n2, {{P("x + 1", xy), 2}});
    const FactoredRatFn sum = f + g;
    const FactoredRatFn prod = f * g;
    const std::vector<Rat> pt = {testutil::random_rat(rng, 5, 3),
                                 testutil::random_rat(rng, 5, 3)};
    try {
      const Rat fv = f.eval(xy, pt), gv = g.eval(xy, pt);
      CHECK(sum.eval(xy, pt) == fv + gv);
      CHECK(prod.eval(xy, pt) == fv * gv);
      ++checked;
    } catch (const DomainError&) {
      // pole hit; resample
    }
  }
}

TEST_CASE("parser round trip on random polynomials") {
  std::mt19937 rng(5);
  const std::vector<std::string> vars = {"x", "y1", "y2"};
  for (int trial = 0; trial < 30; ++trial) {
    const MPoly p = testutil::random_poly(rng, vars, 5, 5);
    CHECK(parse_poly(p.str(), vars) == p);
  }
}

TEST_CASE("parser rejects garbage") {
  CHECK_THROWS_AS(parse_poly("x +* y"), ParseError);
  CHECK_THROWS_AS(parse_poly("(x"), ParseError);
  CHECK_THROWS_AS(parse_poly("x$y"), ParseError);
  CHECK_THROWS_AS(parse_poly("x^y"), ParseError);
  CHECK_THROWS_AS(parse_poly("x + z", std::vector<std::string>{"x"}), ParseError);
}
