#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "posgeom/rat.hpp"

namespace posgeom {

// Term order used for storage and printing: ascending total degree, and
// within a degree the lexicographically larger exponent vector first. This
// prints constants first and, e.g., y1 before y2, matching the fixed
// graded-lex convention of the module.
struct TermLess {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
};

// Sparse multivariate polynomial with exact rational coefficients.
// Invariants: no zero coefficients stored; every exponent vector has length
// equal to the number of variables. Operations on polynomials with different
// variable lists unify them by name.
class MPoly {
public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, Rat, TermLess>;

  MPoly() = default;  // zero polynomial with no variables
  explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MPoly constant(const Rat& c);
  static MPoly variable(const std::string& name);
  static MPoly from_terms(std::vector<std::string> vars, TermMap terms);

  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Zero allowed; returns 0 for the zero polynomial.
  Rat constant_value() const;

  int total_degree() const;  // -1 for the zero polynomial
  int degree_in(const std::string& var) const;
  bool is_homogeneous() const;
  bool depends_on(const std::string& var) const;

  // Returns a copy over `newvars`; every variable actually used must appear
  // in `newvars`.
  MPoly with_vars(const std::vector<std::string>& newvars) const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const Rat& c, const MPoly& p);
  MPoly pow(int e) const;

  // Equality after aligning variable lists by name.
  bool operator==(const MPoly& o) const;
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  // Exact division: returns q with a = q*b, or nullopt if b does not divide
  // a. NotDivisible is a value, not an error. b must be nonzero.
  static std::optional<MPoly> exact_div(const MPoly& a, const MPoly& b);

  // True iff b^k divides *this; largest such k.
  int divisibility_order(const MPoly& b) const;

  Rat eval(const std::vector<Rat>& point) const;  // indexed like vars()
  MPoly derivative(const std::string& var) const;

  // Substitutes variables by polynomials; unreplaced variables map to
  // themselves. The result's variables are the union of image variables,
  // sorted by name, unless `result_vars` pins them.
  MPoly substitute(const std::map<std::string, MPoly>& repl,
                   const std::vector<std::string>* result_vars = nullptr) const;
  MPoly substitute_value(const std::string& var, const Rat& value) const;

  // Homogenization with respect to a fresh variable, placed first.
  MPoly homogenize(const std::string& hvar, int target_degree = -1) const;

  // gcd of |numerators| / lcm of denominators of the coefficients; 0 for 0.
  Rat content() const;
  // this / content, sign fixed so the first stored term is positive.
  MPoly primitive_normalized() const;

  // Leading data with respect to graded lex (highest total degree, then
  // lexicographically largest exponent vector).
  const std::pair<const Exponents, Rat>& leading_term() const;
  Rat leading_coeff() const { return leading_term().second; }

  // True if at most one variable occurs with a positive exponent; fills
  // `var` with it (empty for constants).
  bool is_univariate(std::string* var = nullptr) const;
  // Dense coefficient list c0..cd of a univariate polynomial in `var`.
  std::vector<Rat> univariate_coeffs(const std::string& var) const;
  static MPoly from_univariate_coeffs(const std::string& var,
                                      const std::vector<Rat>& coeffs);

  // Scalar multiple test: *this == c*o for some nonzero rational c.
  // Returns c, or nullopt.
  std::optional<Rat> proportionality(const MPoly& o) const;

  std::string str() const;  // the algebra grammar, e.g. "5 - 3*y1 + 3*y2 - y1*y2"

private:
  void prune();
  std::vector<std::string> vars_;
  TermMap terms_;
};

// Unifies the variable lists of a and b by name (left list first, then new
// names from the right, in order) and returns both aligned.
std::pair<MPoly, MPoly> align_vars(const MPoly& a, const MPoly& b);

// Monic gcd of two univariate polynomials over Q (in the same variable).
MPoly univariate_gcd(const MPoly& a, const MPoly& b, const std::string& var);

// All rational roots with multiplicities, plus the degree of the remaining
// cofactor with no rational roots. Throws ZeroPolynomial on p == 0.
struct RationalRoots {
  std::vector<std::pair<Rat, int>> roots;  // sorted by root
  int cofactor_degree = 0;
};
RationalRoots rational_roots(const MPoly& p);

}  // namespace posgeom
