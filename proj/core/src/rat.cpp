#include "posgeom/rat.hpp"

#include <ostream>

#include "posgeom/errors.hpp"

namespace posgeom {

Rat::Rat(long num, long den) {
  if (den == 0) throw DomainError("DivisionByZero", "rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat::Rat(const Int& num, const Int& den) {
  if (den == 0) throw DomainError("DivisionByZero", "rational with zero denominator");
  v_ = mpq_class(num) / mpq_class(den);
}

Rat Rat::from_string(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw ParseError("invalid rational literal '" + s + "'");
  }
}

Rat Rat::abs() const { return Rat(mpq_class(::abs(v_))); }

Rat Rat::inverse() const {
  if (is_zero()) throw DomainError("DivisionByZero", "inverse of zero");
  return Rat(1) / *this;
}

Rat Rat::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Rat r(1), b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

Rat Rat::operator-() const { return Rat(mpq_class(-v_)); }

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw DomainError("DivisionByZero", "division by zero rational");
  v_ /= o.v_;
  return *this;
}

std::string Rat::str() const { return v_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

bool lex_less(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  const size_t n = a.size() < b.size() ? a.size() : b.size();
  for (size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

}  // namespace posgeom
