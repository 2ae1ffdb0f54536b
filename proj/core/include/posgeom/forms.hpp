#pragma once

#include <string>
#include <vector>

#include "posgeom/ratfn.hpp"

namespace posgeom {

// Affine chart map recorded by residue operations: the pivot variable was
// eliminated via pivot = numer / denom (an affine expression in the
// remaining chart variables).
struct ChartMap {
  std::string pivot_var;
  MPoly numer;
  Rat denom;
  std::string str() const;
};

// Rational top-form coeff * dx1 ^ ... ^ dxd on an affine chart with a fixed
// variable order. Reordered wedge input is normalized by the sign of the
// permutation; the orientation sign lives inside the coefficient.
class RatForm {
public:
  RatForm() = default;
  RatForm(std::vector<std::string> chart_vars, FactoredRatFn coeff);

  // Builds coeff * dw1 ^ ... ^ dwd where (w1..wd) is a permutation of
  // chart_vars, normalizing to the chart order with the permutation sign.
  static RatForm wedge(FactoredRatFn coeff, const std::vector<std::string>& wedge_order,
                       const std::vector<std::string>& chart_vars);

  const std::vector<std::string>& chart_vars() const { return vars_; }
  const FactoredRatFn& coeff() const { return coeff_; }
  int dim() const { return static_cast<int>(vars_.size()); }

  RatForm flipped() const { return RatForm(vars_, -coeff_); }

  // Exact equality as forms; requires identical chart variables.
  bool equals(const RatForm& o) const;

  std::string str() const;

private:
  std::vector<std::string> vars_;
  FactoredRatFn coeff_;
};

// One-form coeff(t) dt on the parameter line, with the coefficient fully
// reduced (univariate gcd) and the denominator split into monic linear
// factors plus a rational-root-free cofactor.
class OneFormOnLine {
public:
  OneFormOnLine() = default;
  OneFormOnLine(std::string var, const MPoly& numerator, const MPoly& denominator);

  const std::string& var() const { return var_; }
  const FactoredRatFn& coeff() const { return coeff_; }

  // Coefficient of dt/(t - a); 0 if there is no pole at a.
  // Throws HigherOrderPole if the pole order at a exceeds 1.
  Rat residue_at(const Rat& a) const;
  // Residue at t = infinity via the substitution t = 1/u.
  Rat residue_at_infinity() const;
  // All finite rational poles.
  std::vector<Rat> rational_poles() const;

  int pole_order_at(const Rat& a) const;

  bool equals(const OneFormOnLine& o) const;
  std::string str() const;

private:
  std::string var_ = "t";
  FactoredRatFn coeff_;
};

// Order of f as a pole of the form: its order as a denominator factor minus
// its order as a numerator factor; 0 if neither. f must be non-constant.
int pole_order(const RatForm& w, const MPoly& f);

// Poincare residue along the affine-linear hypersurface ell = 0, following
// the convention w = eta ^ (d ell / ell) + eta' with d ell in the last slot.
// The pivot is the chart variable of largest index with a nonzero
// coefficient in ell. Requires pole order <= 1.
std::pair<RatForm, ChartMap> residue_along_linear(const RatForm& w, const MPoly& ell);

// One-form A(x,y) d(dvar), still to be restricted to the curve f = 0.
struct CurveOneForm {
  std::vector<std::string> chart_vars;
  FactoredRatFn coeff;
  std::string dvar;
};

// 2D residue along a possibly nonlinear curve f(x,y) = 0, Eq-style pivot on
// the second chart variable when df/dy is nonzero mod f, else on the first.
CurveOneForm residue_along_curve(const RatForm& w, const MPoly& f);

// Rational parametrization t -> (r(t)/h(t), s(t)/h(t)).
struct CurveParam {
  MPoly r, s, h;
  std::string tvar = "t";
};

// Exact pullback of eta along phi, restricted to the curve; cancels common
// factors via the tracked factor list and applies a final univariate gcd.
// raw_num_degree / raw_den_degree, when given, receive the degrees of the
// assembled numerator and denominator before any cancellation.
OneFormOnLine pullback_curve(const CurveOneForm& eta, const CurveParam& phi,
                             int* raw_num_degree = nullptr, int* raw_den_degree = nullptr);

}  // namespace posgeom
