#pragma once

#include <string>
#include <vector>

#include "posgeom/mpoly.hpp"

namespace posgeom {

// One denominator factor with its exponent.
struct Factor {
  MPoly poly;
  int exp = 1;
};

// Rational function kept in factored form: numerator over a product of known
// (assumed irreducible) denominator factors. There is no multivariate gcd
// anywhere; coprimality of the numerator with each factor is enforced by
// exact divisibility tests at construction. Constant factors are folded into
// the numerator, proportional factors are merged, and zero factors are an
// error. Factors keep their first-seen written form.
class FactoredRatFn {
public:
  FactoredRatFn() = default;  // zero
  explicit FactoredRatFn(MPoly num) : num_(std::move(num)) {}
  FactoredRatFn(MPoly num, std::vector<Factor> den);

  const MPoly& numerator() const { return num_; }
  const std::vector<Factor>& denominator() const { return den_; }
  MPoly denominator_expanded() const;

  bool is_zero() const { return num_.is_zero(); }

  FactoredRatFn operator-() const;
  friend FactoredRatFn operator+(const FactoredRatFn& a, const FactoredRatFn& b);
  friend FactoredRatFn operator-(const FactoredRatFn& a, const FactoredRatFn& b);
  friend FactoredRatFn operator*(const FactoredRatFn& a, const FactoredRatFn& b);
  friend FactoredRatFn operator*(const Rat& c, const FactoredRatFn& f);

  // Exact equality as rational functions (cross-multiplied).
  bool equals(const FactoredRatFn& o) const;

  // Throws DomainError("PoleAtPoint") if a denominator factor vanishes.
  Rat eval(const std::vector<std::string>& vars, const std::vector<Rat>& point) const;

  std::string str() const;

private:
  void normalize();
  MPoly num_;
  std::vector<Factor> den_;
};

}  // namespace posgeom
