#include "posgeom/ratfn.hpp"

#include <sstream>

#include "posgeom/errors.hpp"

namespace posgeom {

FactoredRatFn::FactoredRatFn(MPoly num, std::vector<Factor> den)
    : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void FactoredRatFn::normalize() {
  std::vector<Factor> merged;
  for (auto& f : den_) {
    if (f.exp == 0) continue;
    if (f.exp < 0) throw DomainError("BadFactor", "negative factor exponent");
    if (f.poly.is_zero())
      throw DomainError("DivisionByZero", "zero denominator factor");
    if (f.poly.is_constant()) {
      num_ = f.poly.constant_value().pow(f.exp).inverse() * num_;
      continue;
    }
    bool absorbed = false;
    for (auto& g : merged) {
      // f.poly == c * g.poly merges into g with the scalar pulled out.
      if (auto c = f.poly.proportionality(g.poly)) {
        num_ = c->pow(f.exp).inverse() * num_;
        g.exp += f.exp;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) merged.push_back(std::move(f));
  }
  den_ = std::move(merged);

  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  // Cancel numerator against each tracked factor.
  for (auto it = den_.begin(); it != den_.end();) {
    while (it->exp > 0) {
      auto q = MPoly::exact_div(num_, it->poly);
      if (!q) break;
      num_ = std::move(*q);
      --it->exp;
    }
    it = it->exp == 0 ? den_.erase(it) : std::next(it);
  }
}

MPoly FactoredRatFn::denominator_expanded() const {
  MPoly d = MPoly::constant(Rat(1));
  for (const auto& f : den_) d = d * f.poly.pow(f.exp);
  return d;
}

FactoredRatFn FactoredRatFn::operator-() const {
  FactoredRatFn r = *this;
  r.num_ = -r.num_;
  return r;
}

FactoredRatFn operator+(const FactoredRatFn& a, const FactoredRatFn& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // Common denominator: union of factors at max exponent, merging
  // proportional factors onto a's written form.
  struct Entry {
    MPoly poly;
    int ea, eb;
    Rat scale_b;  // b's factor = scale_b * poly
  };
  std::vector<Entry> u;
  for (const auto& f : a.den_) u.push_back({f.poly, f.exp, 0, Rat(1)});
  Rat b_scalar(1);
  for (const auto& g : b.den_) {
    bool found = false;
    for (auto& e : u) {
      if (auto c = g.poly.proportionality(e.poly)) {
        e.eb = g.exp;
        e.scale_b = *c;
        found = true;
        break;
      }
    }
    if (!found) u.push_back({g.poly, 0, g.exp, Rat(1)});
  }
  MPoly na = a.num_, nb = b.num_;
  std::vector<Factor> den;
  for (const auto& e : u) {
    const int m = std::max(e.ea, e.eb);
    den.push_back({e.poly, m});
    if (m > e.ea) na = na * e.poly.pow(m - e.ea);
    if (m > e.eb) nb = nb * e.poly.pow(m - e.eb);
    b_scalar *= e.scale_b.pow(e.eb).inverse();
  }
  nb = b_scalar * nb;
  return FactoredRatFn(na + nb, std::move(den));
}

FactoredRatFn operator-(const FactoredRatFn& a, const FactoredRatFn& b) { return a + (-b); }

FactoredRatFn operator*(const FactoredRatFn& a, const FactoredRatFn& b) {
  std::vector<Factor> den = a.den_;
  den.insert(den.end(), b.den_.begin(), b.den_.end());
  return FactoredRatFn(a.num_ * b.num_, std::move(den));
}

FactoredRatFn operator*(const Rat& c, const FactoredRatFn& f) {
  if (c.is_zero()) return FactoredRatFn();
  FactoredRatFn r = f;
  r.num_ = c * r.num_;
  return r;
}

bool FactoredRatFn::equals(const FactoredRatFn& o) const {
  return num_ * o.denominator_expanded() == o.num_ * denominator_expanded();
}

Rat FactoredRatFn::eval(const std::vector<std::string>& vars,
                        const std::vector<Rat>& point) const {
  Rat d(1);
  for (const auto& f : den_) {
    const Rat v = f.poly.with_vars(vars).eval(point);
    if (v.is_zero()) throw DomainError("PoleAtPoint", "denominator vanishes at point");
    d *= v.pow(f.exp);
  }
  return num_.with_vars(vars).eval(point) / d;
}

std::string FactoredRatFn::str() const {
  if (den_.empty()) return num_.str();
  std::ostringstream os;
  os << "(" << num_.str() << ") / (";
  bool first = true;
  for (const auto& f : den_) {
    if (!first) os << "*";
    os << "(" << f.poly.str() << ")";
    if (f.exp > 1) os << "^" << f.exp;
    first = false;
  }
  os << ")";
  return os.str();
}

}  // namespace posgeom
