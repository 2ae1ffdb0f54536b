#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "test_util.hpp"

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(POSGEOM_BIN) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int rc = pclose(pipe);
  r.status = WEXITSTATUS(rc);
  return r;
}

std::string fx(const std::string& name) { return testutil::fixture_path(name); }

}  // namespace

TEST_CASE("canonical pentagon prints the worked numerator") {
  const RunResult r = run_cli("canonical " + fx("pentagon.json"));
  CHECK(r.status == 0);
  CHECK(r.out.find("numerator: 5 - 3*y1 + 3*y2 - y1*y2") != std::string::npos);
}

TEST_CASE("canonical --verify exits 0 on the pentagon") {
  const RunResult r = run_cli("canonical " + fx("pentagon.json") + " --verify");
  CHECK(r.status == 0);
  CHECK(r.out.find("verification passed") != std::string::npos);
}

TEST_CASE("amplitude with names prints the five-point amplitude") {
  const RunResult r =
      run_cli("amplitude " + fx("pentagon.json") + " --names x13,x14,x24,x25,x35");
  CHECK(r.status == 0);
  for (const auto* term :
       {"1/(x13*x14)", "1/(x14*x24)", "1/(x24*x25)", "1/(x25*x35)", "1/(x13*x35)"})
    CHECK(r.out.find(term) != std::string::npos);
}

TEST_CASE("vertices on an empty polytope exits 3 with a diagnostic") {
  const RunResult r = run_cli("vertices " + fx("empty.json"));
  CHECK(r.status == 3);
  CHECK(r.out.find("Empty") != std::string::npos);
}

TEST_CASE("vertices on an unbounded input exits 3") {
  const RunResult r = run_cli("vertices " + fx("unbounded.json"));
  CHECK(r.status == 3);
  CHECK(r.out.find("Unbounded") != std::string::npos);
}

TEST_CASE("malformed json exits 2") {
  const std::string bad = std::string(POSGEOM_FIXTURES) + "/../test_cli.cpp";
  const RunResult r = run_cli("vertices " + bad);
  CHECK(r.status == 2);
}

TEST_CASE("triangle canonical form in latex") {
  const RunResult r = run_cli("canonical " + fx("triangle.json") + " --latex");
  CHECK(r.status == 0);
  // whitespace-normalized comparison
  std::string got;
  for (char c : r.out)
    if (!std::isspace(static_cast<unsigned char>(c))) got += c;
  CHECK(got.find("\\frac{1}{y_{1}y_{2}(1-y_{1}-y_{2})}\\,dy_{1}\\wedgedy_{2}") !=
        std::string::npos);
}

TEST_CASE("triangle polypol canonical form in latex") {
  const RunResult r = run_cli("polypol-canonical " + fx("triangle_polypol.json") + " --latex");
  CHECK(r.status == 0);
  std::string got;
  for (char c : r.out)
    if (!std::isspace(static_cast<unsigned char>(c))) got += c;
  CHECK(got.find("\\frac{1}{xy(1-x-y)}\\,dx\\wedgedy") != std::string::npos);
}

TEST_CASE("canonical --triangulate agrees with the vertex formula") {
  const RunResult a = run_cli("canonical " + fx("pentagon.json"));
  const RunResult b = run_cli("canonical " + fx("pentagon.json") + " --triangulate");
  CHECK(b.status == 0);
  // same form; the factor order may differ between the two routes
  auto form_of = [](const std::string& out) {
    const std::string head = "omega(P) = ";
    const size_t start = out.find(head) + head.size();
    return posgeom::parse_form(out.substr(start, out.find('\n', start) - start));
  };
  CHECK(form_of(a.out).equals(form_of(b.out)));
}

TEST_CASE("adjoint subcommand prints warren and universal adjoints") {
  const RunResult r = run_cli("adjoint " + fx("pentagon.json"));
  CHECK(r.status == 0);
  CHECK(r.out.find("5*y0^2 - 3*y0*y1 + 3*y0*y2 - y1*y2") != std::string::npos);

  const RunResult u = run_cli("adjoint " + fx("pentagon.json") + " --universal");
  CHECK(u.status == 0);
  CHECK(u.out.find("x1*x2") != std::string::npos);  // default names
}

TEST_CASE("dualvol at a point") {
  const RunResult r = run_cli("dualvol " + fx("pentagon.json") + " --at 0,0");
  CHECK(r.status == 0);
  CHECK(r.out.find("= 5") != std::string::npos);

  const RunResult s = run_cli("dualvol " + fx("pentagon.json") + " --at 1/2,-1/3");
  CHECK(s.status == 0);
}

TEST_CASE("residue subcommand logs the chart map") {
  const RunResult r = run_cli("residue " + fx("pentagon.json") + " --facet 1");
  CHECK(r.status == 0);
  CHECK(r.out.find("chart: y2 = ") != std::string::npos);

  // non-simple polytopes go through the dual volume function
  const RunResult p = run_cli("residue " + fx("pyramid.json") + " --facet 0");
  CHECK(p.status == 0);
  CHECK(p.out.find("chart: y3 = ") != std::string::npos);
}

TEST_CASE("verify subcommand on polytopes") {
  CHECK(run_cli("verify " + fx("assoc3d.json")).status == 0);
  CHECK(run_cli("verify " + fx("pyramid.json")).status == 0);
}

TEST_CASE("polypol adjoint and canonical") {
  const RunResult a = run_cli("polypol-adjoint " + fx("pizza.json"));
  CHECK(a.status == 0);
  CHECK(a.out.find("x + y + z") != std::string::npos);

  const RunResult c = run_cli("polypol-canonical " + fx("pizza.json") + " --verify");
  CHECK(c.status == 0);
  CHECK(c.out.find("alpha = 1") != std::string::npos);
  CHECK(c.out.find("verification passed") != std::string::npos);
}

TEST_CASE("polypol-adjoint consumes conjugate blocks from the input file") {
  const RunResult r = run_cli("polypol-adjoint " + fx("cubic_line.json"));
  CHECK(r.status == 0);
  CHECK(r.out.find("adj(x,y,z) = ") != std::string::npos);
}

TEST_CASE("polypol-adjoint exits 3 on the elliptic fixture") {
  const RunResult r = run_cli("polypol-adjoint " + fx("elliptic.json"));
  CHECK(r.status == 3);
  CHECK(r.out.find("KernelDimensionNot1") != std::string::npos);
}

TEST_CASE("chart-matrix applies a projective change of coordinates") {
  const RunResult r = run_cli("polypol-canonical " + fx("pizza.json") +
                              " --chart-matrix 1,1,0,0,1,0,0,0,1 --verify");
  CHECK(r.status == 0);
  CHECK(r.out.find("verification passed") != std::string::npos);
}

TEST_CASE("json output wraps numbers as strings") {
  const RunResult r = run_cli("vertices " + fx("triangle.json") + " --format json");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"0\"") != std::string::npos);
  CHECK(r.out.find("\"vertices\"") != std::string::npos);

  const RunResult d = run_cli("dualvol " + fx("pentagon.json") + " --at 0,0 --format json");
  CHECK(d.status == 0);
  CHECK(d.out.find("\"5\"") != std::string::npos);
}

TEST_CASE("byte-identical output across repeated runs") {
  const std::string cmd = "canonical " + fx("assoc3d.json");
  const RunResult a = run_cli(cmd);
  const RunResult b = run_cli(cmd);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("flip orientation negates the form") {
  const RunResult r = run_cli("canonical " + fx("triangle.json") + " --flip-orientation");
  CHECK(r.status == 0);
  CHECK(r.out.find("numerator: -1") != std::string::npos);

  const RunResult p =
      run_cli("polypol-canonical " + fx("pizza.json") + " --flip-orientation --verify");
  CHECK(p.status == 0);
  CHECK(p.out.find("alpha = -1") != std::string::npos);
}
