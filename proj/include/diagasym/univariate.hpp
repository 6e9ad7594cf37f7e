#pragma once

#include <string>
#include <utility>
#include <vector>

#include "diagasym/errors.hpp"
#include "diagasym/numeric.hpp"

namespace diagasym {

// Dense univariate polynomial over exact rationals, coefficients in
// ascending degree. The trailing coefficient is nonzero unless the
// polynomial is zero (empty coefficient vector is not used; the zero
// polynomial is {0} normalized to an empty logical degree of -1).
class UnivariatePolynomial {
 public:
  UnivariatePolynomial() = default;
  explicit UnivariatePolynomial(std::vector<Rational> coeffs);

  static UnivariatePolynomial constant(const Rational& c);

  // Degree, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const;
  Rational leading_coeff() const;

  Rational evaluate(const Rational& t) const;
  double evaluate(double t) const;
  Complex evaluate(const Complex& t) const;

  UnivariatePolynomial derivative() const;

  UnivariatePolynomial operator-() const;
  UnivariatePolynomial& operator+=(const UnivariatePolynomial& rhs);
  UnivariatePolynomial& operator-=(const UnivariatePolynomial& rhs);
  UnivariatePolynomial& operator*=(const UnivariatePolynomial& rhs);
  UnivariatePolynomial& operator*=(const Rational& scalar);
  bool operator==(const UnivariatePolynomial& rhs) const;

  // Quotient and remainder with rational arithmetic; rhs must be nonzero.
  std::pair<UnivariatePolynomial, UnivariatePolynomial> divrem(
      const UnivariatePolynomial& rhs) const;
  // Exact quotient; throws Error if the division leaves a remainder.
  UnivariatePolynomial divide_exact(const UnivariatePolynomial& rhs) const;

  // Monic gcd, then p / gcd(p, p'): same roots, all simple.
  UnivariatePolynomial squarefree_part() const;

  std::string str(const std::string& var = "x") const;

 private:
  void normalize();
  std::vector<Rational> coeffs_;
};

UnivariatePolynomial operator+(UnivariatePolynomial lhs, const UnivariatePolynomial& rhs);
UnivariatePolynomial operator-(UnivariatePolynomial lhs, const UnivariatePolynomial& rhs);
UnivariatePolynomial operator*(UnivariatePolynomial lhs, const UnivariatePolynomial& rhs);

UnivariatePolynomial gcd(const UnivariatePolynomial& a, const UnivariatePolynomial& b);

// Number of distinct roots in (0, +inf), by a Sturm chain on the squarefree
// part. Exact.
int count_positive_roots(const UnivariatePolynomial& p);

// The unique positive real root, located by exact sign-change bracketing and
// polished with bisection + Newton to ~1e-15 relative. Throws Error when the
// polynomial has no positive root, and when it has two or more (the
// unique-positive-critical-point hypothesis would be violated; the caller is
// expected to surface that message).
double unique_positive_root(const UnivariatePolynomial& p);

}  // namespace diagasym
