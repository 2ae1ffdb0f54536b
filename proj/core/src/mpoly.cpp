#include "posgeom/mpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "posgeom/errors.hpp"

namespace posgeom {

namespace {
int vec_degree(const std::vector<int>& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}
}  // namespace

bool TermLess::operator()(const std::vector<int>& a, const std::vector<int>& b) const {
  const int da = vec_degree(a), db = vec_degree(b);
  if (da != db) return da < db;
  return a > b;  // lex-larger exponent vector comes first within a degree
}

MPoly MPoly::constant(const Rat& c) {
  MPoly p;
  if (!c.is_zero()) p.terms_[{}] = c;
  return p;
}

MPoly MPoly::variable(const std::string& name) {
  MPoly p({name});
  p.terms_[{1}] = Rat(1);
  return p;
}

MPoly MPoly::from_terms(std::vector<std::string> vars, TermMap terms) {
  MPoly p(std::move(vars));
  for (auto& [e, c] : terms) {
    if (e.size() != p.vars_.size())
      throw DomainError("BadExponentVector", "exponent vector length mismatch");
    if (!c.is_zero()) p.terms_.emplace(e, c);
  }
  return p;
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && vec_degree(terms_.begin()->first) == 0);
}

Rat MPoly::constant_value() const {
  if (is_zero()) return Rat(0);
  if (!is_constant()) throw DomainError("NotConstant", "polynomial is not constant");
  return terms_.begin()->second;
}

int MPoly::total_degree() const {
  if (is_zero()) return -1;
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, vec_degree(e));
  return d;
}

int MPoly::degree_in(const std::string& var) const {
  const auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return 0;
  const size_t i = it - vars_.begin();
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
  return d;
}

bool MPoly::is_homogeneous() const {
  if (is_zero()) return true;
  const int d = vec_degree(terms_.begin()->first);
  for (const auto& [e, c] : terms_)
    if (vec_degree(e) != d) return false;
  return true;
}

bool MPoly::depends_on(const std::string& var) const { return degree_in(var) > 0; }

MPoly MPoly::with_vars(const std::vector<std::string>& newvars) const {
  std::vector<int> where(vars_.size(), -1);
  for (size_t i = 0; i < vars_.size(); ++i) {
    const auto it = std::find(newvars.begin(), newvars.end(), vars_[i]);
    if (it != newvars.end()) where[i] = static_cast<int>(it - newvars.begin());
  }
  MPoly out(newvars);
  for (const auto& [e, c] : terms_) {
    Exponents ne(newvars.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (where[i] < 0)
        throw DomainError("VariableMismatch",
                          "variable '" + vars_[i] + "' missing from target list");
      ne[where[i]] = e[i];
    }
    out.terms_[ne] += c;
  }
  out.prune();
  return out;
}

std::pair<MPoly, MPoly> align_vars(const MPoly& a, const MPoly& b) {
  std::vector<std::string> u = a.vars();
  for (const auto& v : b.vars())
    if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
  return {a.with_vars(u), b.with_vars(u)};
}

void MPoly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
}

MPoly MPoly::operator-() const {
  MPoly p(vars_);
  for (const auto& [e, c] : terms_) p.terms_[e] = -c;
  return p;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (vars_ == o.vars_) {
    for (const auto& [e, c] : o.terms_) terms_[e] += c;
    prune();
    return *this;
  }
  auto [a, b] = align_vars(*this, o);
  a += b;
  return *this = std::move(a);
}

MPoly& MPoly::operator-=(const MPoly& o) { return *this += -o; }

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.vars_ != b.vars_) {
    auto [x, y] = align_vars(a, b);
    return x * y;
  }
  MPoly p(a.vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      MPoly::Exponents e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      p.terms_[e] += ca * cb;
    }
  p.prune();
  return p;
}

MPoly operator*(const Rat& c, const MPoly& p) {
  if (c.is_zero()) return MPoly(p.vars_);
  MPoly q(p.vars_);
  for (const auto& [e, k] : p.terms_) q.terms_[e] = c * k;
  return q;
}

MPoly MPoly::pow(int e) const {
  if (e < 0) throw DomainError("NegativeExponent", "polynomial power must be >= 0");
  MPoly r = MPoly::constant(Rat(1));
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

bool MPoly::operator==(const MPoly& o) const {
  if (vars_ == o.vars_) return terms_ == o.terms_;
  auto [a, b] = align_vars(*this, o);
  return a.terms_ == b.terms_;
}

const std::pair<const MPoly::Exponents, Rat>& MPoly::leading_term() const {
  if (is_zero()) throw DomainError("ZeroPolynomial", "leading term of zero");
  // Storage order is (degree asc, lex desc), so the graded-lex maximum is the
  // first entry of the top-degree block.
  const int d = total_degree();
  for (const auto& t : terms_)
    if (vec_degree(t.first) == d) return t;
  throw DomainError("Internal", "unreachable");
}

std::optional<MPoly> MPoly::exact_div(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw DomainError("DivisionByZero", "exact_div by zero polynomial");
  if (a.is_zero()) return MPoly(a.vars());
  auto [r, d] = align_vars(a, b);
  MPoly q(r.vars());
  const auto& [eb, cb] = d.leading_term();
  while (!r.is_zero()) {
    const auto& [er, cr] = r.leading_term();
    Exponents e(er.size());
    for (size_t i = 0; i < e.size(); ++i) {
      e[i] = er[i] - eb[i];
      if (e[i] < 0) return std::nullopt;
    }
    MPoly t(r.vars());
    t.terms_[e] = cr / cb;
    q += t;
    r -= t * d;
  }
  return q;
}

int MPoly::divisibility_order(const MPoly& b) const {
  int k = 0;
  MPoly r = *this;
  while (!r.is_zero()) {
    auto q = exact_div(r, b);
    if (!q) break;
    r = std::move(*q);
    ++k;
  }
  return k;
}

Rat MPoly::eval(const std::vector<Rat>& point) const {
  if (point.size() != vars_.size())
    throw DomainError("BadPoint", "evaluation point has wrong dimension");
  Rat total(0);
  for (const auto& [e, c] : terms_) {
    Rat m = c;
    for (size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) m *= point[i];
    total += m;
  }
  return total;
}

MPoly MPoly::derivative(const std::string& var) const {
  const auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return MPoly(vars_);
  const size_t i = it - vars_.begin();
  MPoly p(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents ne = e;
    ne[i] -= 1;
    p.terms_[ne] += Rat(e[i]) * c;
  }
  p.prune();
  return p;
}

MPoly MPoly::substitute(const std::map<std::string, MPoly>& repl,
                        const std::vector<std::string>* result_vars) const {
  std::vector<MPoly> images(vars_.size());
  for (size_t i = 0; i < vars_.size(); ++i) {
    const auto it = repl.find(vars_[i]);
    images[i] = it != repl.end() ? it->second : MPoly::variable(vars_[i]);
  }
  std::vector<std::string> out_vars;
  if (result_vars) {
    out_vars = *result_vars;
  } else {
    for (const auto& im : images)
      for (const auto& v : im.vars())
        if (std::find(out_vars.begin(), out_vars.end(), v) == out_vars.end())
          out_vars.push_back(v);
    std::sort(out_vars.begin(), out_vars.end());
  }
  MPoly total(out_vars);
  for (const auto& [e, c] : terms_) {
    MPoly m = MPoly::constant(c);
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) m = m * images[i].pow(e[i]);
    total += m.with_vars(out_vars);
  }
  return total;
}

MPoly MPoly::substitute_value(const std::string& var, const Rat& value) const {
  return substitute({{var, MPoly::constant(value)}}, &vars_);
}

MPoly MPoly::homogenize(const std::string& hvar, int target_degree) const {
  if (depends_on(hvar))
    throw DomainError("VariableMismatch", "homogenization variable already in use");
  const int d = target_degree >= 0 ? target_degree : total_degree();
  if (total_degree() > d)
    throw DomainError("BadDegree", "homogenization target below actual degree");
  std::vector<std::string> nv;
  nv.push_back(hvar);
  nv.insert(nv.end(), vars_.begin(), vars_.end());
  MPoly p(nv);
  for (const auto& [e, c] : terms_) {
    Exponents ne;
    ne.push_back(d - vec_degree(e));
    ne.insert(ne.end(), e.begin(), e.end());
    p.terms_[ne] = c;
  }
  return p;
}

Rat MPoly::content() const {
  if (is_zero()) return Rat(0);
  Int g(0), l(1);
  for (const auto& [e, c] : terms_) {
    Int num = c.num();
    mpz_abs(num.get_mpz_t(), num.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    Int den = c.den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
  }
  return Rat(g, l);
}

MPoly MPoly::primitive_normalized() const {
  if (is_zero()) return *this;
  Rat c = content();
  if (terms_.begin()->second.sign() < 0) c = -c;
  return c.inverse() * *this;
}

bool MPoly::is_univariate(std::string* var) const {
  std::string found;
  for (const auto& [e, c] : terms_)
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) {
        if (found.empty())
          found = vars_[i];
        else if (found != vars_[i])
          return false;
      }
  if (var) *var = found;
  return true;
}

std::vector<Rat> MPoly::univariate_coeffs(const std::string& var) const {
  std::string used;
  if (!is_univariate(&used) || (!used.empty() && used != var))
    throw DomainError("NotUnivariate", "polynomial is not univariate in " + var);
  std::vector<Rat> out(std::max(0, degree_in(var)) + 1, Rat(0));
  const auto it = std::find(vars_.begin(), vars_.end(), var);
  const int vi = it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
  for (const auto& [e, c] : terms_) out[vi >= 0 ? e[vi] : 0] = c;
  return out;
}

MPoly MPoly::from_univariate_coeffs(const std::string& var, const std::vector<Rat>& coeffs) {
  MPoly p({var});
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) p.terms_[{static_cast<int>(i)}] = coeffs[i];
  return p;
}

std::optional<Rat> MPoly::proportionality(const MPoly& o) const {
  if (is_zero() || o.is_zero()) return std::nullopt;
  auto [a, b] = align_vars(*this, o);
  if (a.terms_.size() != b.terms_.size()) return std::nullopt;
  const Rat c = a.terms_.begin()->second / b.terms_.begin()->second;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second != c * ib->second) return std::nullopt;
  }
  return c;
}

std::string MPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const Rat mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    std::ostringstream mono;
    bool has_var = false;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (has_var) mono << "*";
      mono << vars_[i];
      if (e[i] > 1) mono << "^" << e[i];
      has_var = true;
    }
    if (!has_var) {
      os << mag.str();
    } else if (mag.is_one()) {
      os << mono.str();
    } else {
      os << mag.str() << "*" << mono.str();
    }
  }
  return os.str();
}

MPoly univariate_gcd(const MPoly& a, const MPoly& b, const std::string& var) {
  auto mod = [&](const MPoly& x, const MPoly& y) {
    // plain univariate remainder over Q
    std::vector<Rat> r = x.univariate_coeffs(var);
    const std::vector<Rat> d = y.univariate_coeffs(var);
    const int dd = static_cast<int>(d.size()) - 1;
    while (static_cast<int>(r.size()) - 1 >= dd) {
      const Rat q = r.back() / d.back();
      const int shift = static_cast<int>(r.size()) - 1 - dd;
      for (int i = 0; i <= dd; ++i) r[i + shift] -= q * d[i];
      while (!r.empty() && r.back().is_zero()) r.pop_back();
      if (r.empty()) break;
    }
    return MPoly::from_univariate_coeffs(var, r);
  };
  MPoly x = a, y = b;
  if (x.is_zero()) std::swap(x, y);
  if (x.is_zero()) return MPoly({var});
  while (!y.is_zero()) {
    MPoly r = mod(x, y);
    x = y;
    y = std::move(r);
  }
  const std::vector<Rat> c = x.univariate_coeffs(var);
  return c.back().inverse() * x;  // monic
}

RationalRoots rational_roots(const MPoly& p) {
  if (p.is_zero()) throw DomainError("ZeroPolynomial", "rational_roots of zero polynomial");
  std::string var;
  if (!p.is_univariate(&var))
    throw DomainError("NotUnivariate", "rational_roots requires a univariate polynomial");
  RationalRoots out;
  if (var.empty()) return out;  // nonzero constant

  std::vector<Rat> c = p.univariate_coeffs(var);
  // Factor out t^k.
  int zero_mult = 0;
  while (!c.empty() && c.front().is_zero()) {
    c.erase(c.begin());
    ++zero_mult;
  }
  if (zero_mult > 0) out.roots.emplace_back(Rat(0), zero_mult);
  if (c.size() <= 1) return out;

  // Clear denominators to a primitive integer polynomial.
  Int l(1);
  for (const auto& k : c) {
    Int den = k.den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
  }
  std::vector<Int> ic(c.size());
  for (size_t i = 0; i < c.size(); ++i) ic[i] = c[i].num() * (l / c[i].den());
  Int g(0);
  for (const auto& k : ic) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), k.get_mpz_t());
  for (auto& k : ic) k /= g;

  auto divisors = [](Int n) {
    mpz_abs(n.get_mpz_t(), n.get_mpz_t());
    std::vector<Int> ds;
    // Trial division; coefficients at desk scale keep this cheap.
    for (Int d(1); d * d <= n; ++d) {
      if (n % d == 0) {
        ds.push_back(d);
        if (d * d != n) ds.push_back(n / d);
      }
    }
    return ds;
  };

  MPoly q = MPoly::from_univariate_coeffs(var, c);
  const std::vector<Int> ps = divisors(ic.front());
  const std::vector<Int> qs = divisors(ic.back());
  std::vector<Rat> candidates;
  for (const auto& pn : ps)
    for (const auto& qd : qs) {
      candidates.push_back(Rat(pn, qd));
      candidates.push_back(Rat(-pn, qd));
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const MPoly t = MPoly::variable(var);
  for (const auto& r : candidates) {
    if (!q.eval(std::vector<Rat>{r}).is_zero()) continue;
    int mult = 0;
    const MPoly lin = t - MPoly::constant(r);
    while (true) {
      auto d = MPoly::exact_div(q, lin);
      if (!d) break;
      q = std::move(*d);
      ++mult;
    }
    if (mult > 0) out.roots.emplace_back(r, mult);
  }
  std::sort(out.roots.begin(), out.roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  out.cofactor_degree = std::max(0, q.total_degree());
  return out;
}

}  // namespace posgeom
