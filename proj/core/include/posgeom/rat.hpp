#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <vector>

namespace posgeom {

using Int = mpz_class;

// Exact rational scalar. Kept canonical at all times: gcd(|num|, den) = 1,
// den > 0, zero is 0/1. Backed by GMP.
class Rat {
public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
  Rat(const Int& n) : v_(n) {}
  Rat(long num, long den);
  Rat(const Int& num, const Int& den);

  // Accepts "p", "-p", "p/q" with arbitrary precision.
  static Rat from_string(const std::string& s);

  const Int num() const { return v_.get_num(); }
  const Int den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }

  Rat abs() const;
  Rat inverse() const;  // throws DomainError on zero
  Rat pow(long e) const;

  Rat operator-() const;
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  // "p" or "p/q".
  std::string str() const;

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
  explicit Rat(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

// Lexicographic comparison of coordinate vectors.
bool lex_less(const std::vector<Rat>& a, const std::vector<Rat>& b);

}  // namespace posgeom
