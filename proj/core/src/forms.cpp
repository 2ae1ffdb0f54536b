#include "posgeom/forms.hpp"

#include <algorithm>
#include <sstream>

#include "posgeom/errors.hpp"

namespace posgeom {

std::string ChartMap::str() const {
  std::ostringstream os;
  os << pivot_var << " = (" << numer.str() << ") / (" << denom.str() << ")";
  return os.str();
}

RatForm::RatForm(std::vector<std::string> chart_vars, FactoredRatFn coeff)
    : vars_(std::move(chart_vars)), coeff_(std::move(coeff)) {}

RatForm RatForm::wedge(FactoredRatFn coeff, const std::vector<std::string>& wedge_order,
                       const std::vector<std::string>& chart_vars) {
  if (wedge_order.size() != chart_vars.size())
    throw DomainError("BadWedge", "wedge order must list every chart variable");
  std::vector<int> perm;
  for (const auto& v : wedge_order) {
    const auto it = std::find(chart_vars.begin(), chart_vars.end(), v);
    if (it == chart_vars.end())
      throw DomainError("BadWedge", "unknown differential d" + v);
    perm.push_back(static_cast<int>(it - chart_vars.begin()));
  }
  // Sign of the permutation by counting inversions.
  int sign = 1;
  for (size_t i = 0; i < perm.size(); ++i)
    for (size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) sign = -sign;
  if (sign < 0) coeff = -coeff;
  return RatForm(chart_vars, std::move(coeff));
}

bool RatForm::equals(const RatForm& o) const {
  if (vars_ != o.vars_)
    throw DomainError("ChartMismatch", "form comparison across different charts");
  return coeff_.equals(o.coeff_);
}

std::string RatForm::str() const {
  std::ostringstream os;
  os << coeff_.str();
  if (!vars_.empty()) {
    os << " ";
    for (size_t i = 0; i < vars_.size(); ++i) os << (i ? "^d" : "d") << vars_[i];
  }
  return os.str();
}

int pole_order(const RatForm& w, const MPoly& f) {
  if (f.is_constant())
    throw DomainError("ConstantDivisor", "pole order along a constant");
  if (w.coeff().is_zero()) return 0;
  const int d_ord = w.coeff().denominator_expanded().divisibility_order(f);
  const int n_ord = w.coeff().numerator().divisibility_order(f);
  return d_ord - n_ord;
}

namespace {

// Splits ell = c0 + sum ci * xi over the chart; throws if not affine-linear.
void affine_linear_parts(const MPoly& ell, const std::vector<std::string>& vars,
                         Rat* c0, std::vector<Rat>* c) {
  const MPoly e = ell.with_vars(vars);
  if (e.total_degree() > 1)
    throw DomainError("NotLinear", "expected an affine-linear polynomial");
  *c0 = Rat(0);
  c->assign(vars.size(), Rat(0));
  for (const auto& [exp, coeff] : e.terms()) {
    int where = -1;
    for (size_t i = 0; i < exp.size(); ++i)
      if (exp[i] == 1) where = static_cast<int>(i);
    if (where < 0)
      *c0 = coeff;
    else
      (*c)[where] = coeff;
  }
}

}  // namespace

std::pair<RatForm, ChartMap> residue_along_linear(const RatForm& w, const MPoly& ell) {
  if (ell.is_constant())
    throw DomainError("LinearFormConstant", "residue along a constant form");
  const auto& vars = w.chart_vars();
  Rat c0;
  std::vector<Rat> c;
  affine_linear_parts(ell, vars, &c0, &c);

  int pivot = -1;
  for (int i = static_cast<int>(vars.size()) - 1; i >= 0; --i)
    if (!c[i].is_zero()) { pivot = i; break; }
  if (pivot < 0)
    throw DomainError("LinearFormConstant", "linear form has no chart variable");

  const int ord = pole_order(w, ell);
  if (ord > 1) throw DomainError("HigherOrderPole", "pole order exceeds 1 along " + ell.str());

  // Substitution solving ell = 0 for the pivot variable.
  std::vector<std::string> rest;
  for (size_t i = 0; i < vars.size(); ++i)
    if (static_cast<int>(i) != pivot) rest.push_back(vars[i]);
  MPoly numer(rest);  // pivot = numer / denom
  numer += MPoly::constant(-c0);
  for (size_t i = 0; i < vars.size(); ++i)
    if (static_cast<int>(i) != pivot && !c[i].is_zero())
      numer -= c[i] * MPoly::variable(vars[i]);
  const Rat denom = c[pivot];
  ChartMap chart{vars[pivot], numer.with_vars(rest), denom};

  // Substituting x_pivot = numer/denom into a polynomial p multiplies through
  // by denom^(deg_pivot p); track those powers explicitly to stay polynomial.
  auto restrict_poly = [&](const MPoly& p) -> std::pair<MPoly, int> {
    const MPoly q = p.with_vars(vars);
    const int dp = q.degree_in(vars[pivot]);
    MPoly out(rest);
    for (const auto& [e, k] : q.terms()) {
      MPoly::Exponents re;
      int pe = 0;
      for (size_t i = 0; i < e.size(); ++i) {
        if (static_cast<int>(i) == pivot)
          pe = e[i];
        else
          re.push_back(e[i]);
      }
      MPoly term = k * MPoly::from_terms(rest, {{re, Rat(1)}});
      term = term * numer.pow(pe) * MPoly::constant(denom.pow(dp - pe));
      out += term;
    }
    return {out, dp};
  };

  if (ord < 1)
    return {RatForm(rest, FactoredRatFn(MPoly(rest))), chart};  // no pole, residue 0

  // Peel every power of ell out of the denominator factors; the leftover
  // cofactors stay as factors (constants get folded by the constructor).
  const FactoredRatFn& cf = w.coeff();
  MPoly num = cf.numerator();
  std::vector<Factor> den;
  int ell_seen = 0;
  for (const auto& fac : cf.denominator()) {
    MPoly g = fac.poly;
    int k = 0;
    while (true) {
      auto q = MPoly::exact_div(g, ell);
      if (!q) break;
      g = std::move(*q);
      ++k;
    }
    if (k > 0) {
      ell_seen += k * fac.exp;
      if (!(g.is_constant() && g.constant_value().is_one())) den.push_back({g, fac.exp});
    } else {
      den.push_back(fac);
    }
  }
  while (ell_seen > 1) {
    auto q = MPoly::exact_div(num, ell);
    if (!q) break;
    num = std::move(*q);
    --ell_seen;
  }
  if (ell_seen != 1)
    throw DomainError("HigherOrderPole", "pole order exceeds 1 along " + ell.str());

  // w = N/(ell * R) dx1^..^dxd
  //   = (-1)^(d - 1 - pivot) / c_pivot * N/R dx(rest) ^ dell/ell.
  const int d = w.dim();
  const int sign = ((d - 1 - pivot) % 2 == 0) ? 1 : -1;

  auto [rnum, dn] = restrict_poly(num);
  int denom_power = -dn;  // net exponent of `denom` in the result numerator
  std::vector<Factor> rden;
  for (const auto& fac : den) {
    auto [rp, dfp] = restrict_poly(fac.poly);
    if (rp.is_zero())
      throw DomainError("DegenerateRestriction",
                        "factor " + fac.poly.str() + " vanishes identically on " + ell.str());
    denom_power += dfp * fac.exp;
    rden.push_back({rp, fac.exp});
  }
  const Rat scalar = Rat(sign) / c[pivot] * denom.pow(denom_power);
  FactoredRatFn coeff = scalar * FactoredRatFn(rnum, std::move(rden));
  return {RatForm(rest, std::move(coeff)), chart};
}

CurveOneForm residue_along_curve(const RatForm& w, const MPoly& f) {
  const auto& vars = w.chart_vars();
  if (vars.size() != 2)
    throw DomainError("ChartMismatch", "curve residues live in a 2D chart");
  const int ord = pole_order(w, f);
  if (ord > 1) throw DomainError("HigherOrderPole", "pole order exceeds 1 along " + f.str());
  if (ord < 1)
    return {vars, FactoredRatFn(MPoly(vars)), vars[0]};

  const MPoly fa = f.with_vars(vars);
  const MPoly fy = fa.derivative(vars[1]);
  const MPoly fx = fa.derivative(vars[0]);
  // Pivot on y when df/dy is not identically zero (genericity), else on x.
  // w = N/(f R) dx^dy = [N/(R fy) dx] ^ df/f       (pivot y)
  //                   = [-N/(R fx) dy] ^ df/f      (pivot x)
  const bool pivot_y = !fy.is_zero();
  const MPoly& deriv = pivot_y ? fy : fx;
  if (deriv.is_zero())
    throw DomainError("ConstantDivisor", "curve equation has vanishing gradient");

  MPoly num = w.coeff().numerator();
  std::vector<Factor> den;
  bool dropped = false;
  Rat fscale(1);
  for (const auto& fac : w.coeff().denominator()) {
    if (!dropped) {
      if (auto prop = fac.poly.proportionality(f)) {
        fscale = *prop;
        if (fac.exp > 1) den.push_back({fac.poly, fac.exp - 1});
        dropped = true;
        continue;
      }
    }
    den.push_back(fac);
  }
  if (!dropped)
    throw DomainError("HigherOrderPole", "form has no tracked pole along " + f.str());
  den.push_back({deriv, 1});
  FactoredRatFn coeff = (Rat(pivot_y ? 1 : -1) / fscale) * FactoredRatFn(num, std::move(den));
  return {vars, std::move(coeff), pivot_y ? vars[0] : vars[1]};
}

OneFormOnLine::OneFormOnLine(std::string var, const MPoly& numerator, const MPoly& denominator)
    : var_(std::move(var)) {
  if (denominator.is_zero())
    throw DomainError("DivisionByZero", "one-form with zero denominator");
  if (numerator.is_zero()) return;
  MPoly num = numerator.with_vars({var_});
  MPoly den = denominator.with_vars({var_});
  const MPoly g = univariate_gcd(num, den, var_);
  if (g.total_degree() > 0) {
    num = *MPoly::exact_div(num, g);
    den = *MPoly::exact_div(den, g);
  }
  // Split the reduced denominator into monic linear factors and a cofactor.
  const RationalRoots rr = rational_roots(den);
  std::vector<Factor> fs;
  MPoly rest = den;
  const MPoly t = MPoly::variable(var_);
  for (const auto& [root, mult] : rr.roots) {
    const MPoly lin = t - MPoly::constant(root);
    for (int k = 0; k < mult; ++k) rest = *MPoly::exact_div(rest, lin);
    fs.push_back({lin, mult});
  }
  if (!rest.is_constant()) {
    const Rat lead = rest.univariate_coeffs(var_).back();
    fs.push_back({lead.inverse() * rest, 1});
    rest = MPoly::constant(lead);
  }
  num = rest.constant_value().inverse() * num;
  coeff_ = FactoredRatFn(std::move(num), std::move(fs));
}

int OneFormOnLine::pole_order_at(const Rat& a) const {
  if (coeff_.is_zero()) return 0;
  const MPoly lin = MPoly::variable(var_) - MPoly::constant(a);
  int ord = 0;
  for (const auto& f : coeff_.denominator()) ord += f.exp * f.poly.divisibility_order(lin);
  return ord;
}

Rat OneFormOnLine::residue_at(const Rat& a) const {
  const int ord = pole_order_at(a);
  if (ord == 0) return Rat(0);
  if (ord > 1)
    throw DomainError("HigherOrderPole", "pole order " + std::to_string(ord) + " at " + a.str());
  Rat rest(1);
  const MPoly lin = MPoly::variable(var_) - MPoly::constant(a);
  for (const auto& f : coeff_.denominator()) {
    if (f.poly == lin) continue;
    rest *= f.poly.eval({a}).pow(f.exp);
  }
  return coeff_.numerator().with_vars({var_}).eval({a}) / rest;
}

Rat OneFormOnLine::residue_at_infinity() const {
  if (coeff_.is_zero()) return Rat(0);
  // t = 1/u, dt = -du/u^2.
  const MPoly den = coeff_.denominator_expanded().with_vars({var_});
  const MPoly num = coeff_.numerator().with_vars({var_});
  const int N = num.total_degree(), D = den.total_degree();
  auto reversed = [&](const MPoly& p, int deg) {
    std::vector<Rat> c = p.univariate_coeffs(var_);
    c.resize(deg + 1, Rat(0));
    std::reverse(c.begin(), c.end());
    return MPoly::from_univariate_coeffs(var_, c);
  };
  MPoly nu = -reversed(num, N);
  MPoly du = reversed(den, D);
  const int shift = D - N - 2;
  const MPoly u = MPoly::variable(var_);
  if (shift >= 0)
    nu = nu * u.pow(shift);
  else
    du = du * u.pow(-shift);
  return OneFormOnLine(var_, nu, du).residue_at(Rat(0));
}

std::vector<Rat> OneFormOnLine::rational_poles() const {
  std::vector<Rat> out;
  const MPoly t = MPoly::variable(var_);
  for (const auto& f : coeff_.denominator()) {
    if (f.poly.total_degree() != 1) continue;
    const auto c = f.poly.univariate_coeffs(var_);
    out.push_back(-c[0] / c[1]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool OneFormOnLine::equals(const OneFormOnLine& o) const {
  if (var_ != o.var_)
    throw DomainError("ChartMismatch", "one-form comparison across variables");
  return coeff_.equals(o.coeff_);
}

std::string OneFormOnLine::str() const { return coeff_.str() + " d" + var_; }

OneFormOnLine pullback_curve(const CurveOneForm& eta, const CurveParam& phi,
                             int* raw_num_degree, int* raw_den_degree) {
  const std::string& t = phi.tvar;
  const MPoly r = phi.r.with_vars({t});
  const MPoly s = phi.s.with_vars({t});
  const MPoly h = phi.h.with_vars({t});
  if (h.is_zero()) throw DomainError("DegenerateParametrization", "h = 0");
  const MPoly dr = r.derivative(t), ds = s.derivative(t), dh = h.derivative(t);
  const MPoly wr = dr * h - r * dh;  // h^2 d(r/h) = wr dt
  const MPoly ws = ds * h - s * dh;
  if (wr.is_zero() && ws.is_zero())
    throw DomainError("DegenerateParametrization", "constant parametrization");

  const std::string& x = eta.chart_vars[0];
  const std::string& y = eta.chart_vars[1];
  // p(x,y) of degree D becomes P(t)/h^D with P the homogenized substitution.
  auto compose = [&](const MPoly& p) -> std::pair<MPoly, int> {
    const MPoly ph = p.with_vars({x, y}).homogenize("__h");
    const int deg = std::max(0, p.total_degree());
    MPoly out = ph.substitute({{x, r}, {y, s}, {"__h", h}},
                              nullptr);
    return {out.with_vars({t}), deg};
  };

  const MPoly& w = eta.dvar == x ? wr : ws;
  auto [nump, ndeg] = compose(eta.coeff.numerator());
  // eta = num/(prod f_i^e_i) d(dvar)
  // phi^* eta = [N(t)/h^ndeg] / prod [F_i(t)/h^(deg f_i)]^e_i * w/h^2 dt.
  MPoly num = nump * w;
  MPoly den = MPoly::constant(Rat(1));
  int hpow = 2 + ndeg;  // denominator powers of h
  for (const auto& f : eta.coeff.denominator()) {
    auto [fp, fdeg] = compose(f.poly);
    if (fp.is_zero())
      throw DomainError("DegenerateParametrization",
                        "parametrization lands inside the factor " + f.poly.str());
    den = den * fp.pow(f.exp);
    hpow -= fdeg * f.exp;
  }
  if (hpow > 0)
    den = den * h.pow(hpow);
  else
    num = num * h.pow(-hpow);
  if (raw_num_degree) *raw_num_degree = num.total_degree();
  if (raw_den_degree) *raw_den_degree = den.total_degree();
  return OneFormOnLine(t, num, den);
}

}  // namespace posgeom
