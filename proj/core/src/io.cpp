#include "posgeom/io.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>

#include "posgeom/errors.hpp"
#include "posgeom/parser.hpp"

namespace posgeom {

namespace {

using nlohmann::json;

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return Rat::from_string(j.get<std::string>());
  throw ParseError("expected an integer or a \"p/q\" string, got " + j.dump());
}

std::vector<Rat> rat_vector(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  std::vector<Rat> v;
  for (const auto& e : j) v.push_back(rat_from_json(e));
  return v;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

// y12 -> y_{12} when the name is letters followed by digits.
std::string latex_var(const std::string& v) {
  size_t i = v.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(v[i - 1]))) --i;
  if (i == 0 || i == v.size()) return v;
  return v.substr(0, i) + "_{" + v.substr(i) + "}";
}

std::string latex_rat(const Rat& r) {
  if (r.is_integer()) return r.num().get_str();
  const Rat a = r.abs();
  std::string s = "\\frac{" + a.num().get_str() + "}{" + a.den().get_str() + "}";
  return r.sign() < 0 ? "-" + s : s;
}

std::string latex_poly(const MPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (first) {
      if (c.sign() < 0) os << "-";
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    const Rat mag = c.abs();
    std::ostringstream mono;
    bool has_var = false;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      mono << latex_var(p.vars()[i]);
      if (e[i] > 1) mono << "^{" << e[i] << "}";
      has_var = true;
    }
    if (!has_var)
      os << latex_rat(mag);
    else if (mag.is_one())
      os << mono.str();
    else
      os << latex_rat(mag) << mono.str();
  }
  return os.str();
}

std::string latex_factor_product(const std::vector<Factor>& fs) {
  std::ostringstream os;
  for (const auto& f : fs) {
    const bool bare = f.poly.term_count() == 1 && f.poly.leading_coeff().is_one() && f.exp == 1;
    if (bare)
      os << latex_poly(f.poly);
    else {
      os << "(" << latex_poly(f.poly) << ")";
      if (f.exp > 1) os << "^{" << f.exp << "}";
    }
  }
  return os.str();
}

std::string latex_ratfn(const FactoredRatFn& fn) {
  if (fn.denominator().empty()) return latex_poly(fn.numerator());
  return "\\frac{" + latex_poly(fn.numerator()) + "}{" + latex_factor_product(fn.denominator()) +
         "}";
}

}  // namespace

HRep parse_polytope_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("U") || !j.contains("z"))
    throw ParseError("polytope JSON needs \"U\" and \"z\"");
  const json& ju = j["U"];
  if (!ju.is_array() || ju.empty()) throw ParseError("\"U\" must be a nonempty array of rows");
  std::vector<std::vector<Rat>> rows;
  for (const auto& row : ju) rows.push_back(rat_vector(row));
  HRep h{RatMatrix::from_rows(rows), rat_vector(j["z"])};
  if (static_cast<int>(h.z.size()) != h.n())
    throw ParseError("\"z\" must have one entry per row of \"U\"");
  return h;
}

PolypolInput parse_polypol_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("curves") || !j.contains("vertices"))
    throw ParseError("polypol JSON needs \"curves\" and \"vertices\"");
  PolypolInput in;
  const std::vector<std::string> xyz = {"x", "y", "z"};
  for (const auto& jc : j["curves"]) {
    PlaneCurve c;
    if (!jc.contains("f")) throw ParseError("curve entry needs \"f\"");
    c.f = parse_poly(jc["f"].get<std::string>(), xyz);
    if (jc.contains("param")) {
      const auto& jp = jc["param"];
      if (!jp.is_array() || jp.size() != 3)
        throw ParseError("\"param\" must be [\"r(t)\", \"s(t)\", \"h(t)\"]");
      CurveParam phi;
      phi.r = parse_poly(jp[0].get<std::string>(), std::vector<std::string>{"t"});
      phi.s = parse_poly(jp[1].get<std::string>(), std::vector<std::string>{"t"});
      phi.h = parse_poly(jp[2].get<std::string>(), std::vector<std::string>{"t"});
      c.param = std::move(phi);
    }
    if (jc.contains("nodes"))
      for (const auto& q : jc["nodes"]) c.nodes.push_back(rat_vector(q));
    in.curves.push_back(std::move(c));
  }
  for (const auto& v : j["vertices"]) in.vertices.push_back(rat_vector(v));
  if (j.contains("intervals"))
    for (const auto& iv : j["intervals"]) {
      const auto pair = rat_vector(iv);
      if (pair.size() != 2) throw ParseError("intervals must be [a, b] pairs");
      in.intervals.emplace_back(pair[0], pair[1]);
    }
  if (j.contains("extra_points"))
    for (const auto& p : j["extra_points"]) in.extra_points.push_back(rat_vector(p));
  if (j.contains("conjugates"))
    for (const auto& b : j["conjugates"]) {
      ConjugateBlock blk;
      blk.curve = b.at("curve").get<int>();
      blk.minpoly = parse_poly(b.at("minpoly").get<std::string>(), std::vector<std::string>{"t"});
      in.blocks.push_back(std::move(blk));
    }
  return in;
}

std::string emit_rat(const Rat& r, Format f) {
  return f == Format::Latex ? latex_rat(r) : r.str();
}

std::string emit_poly(const MPoly& p, Format f) {
  return f == Format::Latex ? latex_poly(p) : p.str();
}

std::string emit_ratfn(const FactoredRatFn& fn, Format f) {
  return f == Format::Latex ? latex_ratfn(fn) : fn.str();
}

std::string emit_form(const RatForm& w, Format f) {
  if (f != Format::Latex) return w.str();
  std::ostringstream os;
  os << latex_ratfn(w.coeff()) << "\\, ";
  for (size_t i = 0; i < w.chart_vars().size(); ++i) {
    if (i) os << " \\wedge ";
    os << "d" << latex_var(w.chart_vars()[i]);
  }
  return os.str();
}

std::string emit_one_form(const OneFormOnLine& w, Format f) {
  if (f != Format::Latex) return w.str();
  return latex_ratfn(w.coeff()) + "\\, d" + latex_var(w.var());
}

FactoredRatFn parse_ratfn(const std::string& text, const std::vector<std::string>& vars) {
  // Split at the first '/' at parenthesis depth 0; the polynomial grammar
  // itself has no division operator outside rational literals.
  int depth = 0;
  size_t slash = std::string::npos;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    else if (text[i] == ')') --depth;
    else if (text[i] == '/' && depth == 0) {
      // not a rational literal: previous non-space must be ')'
      size_t k = i;
      while (k > 0 && std::isspace(static_cast<unsigned char>(text[k - 1]))) --k;
      if (k > 0 && text[k - 1] == ')') {
        slash = i;
        break;
      }
    }
  }
  if (slash == std::string::npos) return FactoredRatFn(parse_poly(text, vars));
  const MPoly num = parse_poly(text.substr(0, slash), vars);
  std::string den = text.substr(slash + 1);
  // Denominator: "((f1)^e1*(f2)*...)" — strip the outer parentheses.
  size_t b = den.find('(');
  size_t e = den.rfind(')');
  if (b == std::string::npos || e == std::string::npos || e <= b)
    throw ParseError("malformed denominator: " + den);
  den = den.substr(b + 1, e - b - 1);
  std::vector<Factor> fs;
  size_t i = 0;
  while (i < den.size()) {
    while (i < den.size() && (std::isspace(static_cast<unsigned char>(den[i])) || den[i] == '*'))
      ++i;
    if (i >= den.size()) break;
    if (den[i] != '(') throw ParseError("expected '(' in denominator");
    int d2 = 0;
    size_t j = i;
    for (; j < den.size(); ++j) {
      if (den[j] == '(') ++d2;
      if (den[j] == ')' && --d2 == 0) break;
    }
    if (d2 != 0) throw ParseError("unbalanced parentheses in denominator");
    Factor f{parse_poly(den.substr(i + 1, j - i - 1), vars), 1};
    i = j + 1;
    if (i < den.size() && den[i] == '^') {
      ++i;
      size_t k = i;
      while (k < den.size() && std::isdigit(static_cast<unsigned char>(den[k]))) ++k;
      f.exp = std::stoi(den.substr(i, k - i));
      i = k;
    }
    fs.push_back(std::move(f));
  }
  return FactoredRatFn(num, std::move(fs));
}

RatForm parse_form(const std::string& text) {
  // The trailing " d<v1>^d<v2>..." block names the chart.
  auto read_diffs = [](const std::string& s, std::vector<std::string>* vars) {
    size_t i = 0;
    while (i < s.size()) {
      if (s[i] != 'd') return false;
      ++i;
      size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      if (j == i) return false;
      vars->push_back(s.substr(i, j - i));
      if (j == s.size()) return true;
      if (s[j] != '^') return false;
      i = j + 1;
    }
    return false;
  };
  for (size_t pos = text.rfind(' '); pos != std::string::npos;
       pos = pos == 0 ? std::string::npos : text.rfind(' ', pos - 1)) {
    std::vector<std::string> vars;
    if (read_diffs(text.substr(pos + 1), &vars))
      return RatForm(vars, parse_ratfn(text.substr(0, pos), vars));
  }
  throw ParseError("form must end in d<var> wedges: '" + text + "'");
}

}  // namespace posgeom
