#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "diagasym/errors.hpp"
#include "diagasym/numeric.hpp"

namespace diagasym {

class UnivariatePolynomial;

using Exponents = std::vector<unsigned>;

// Graded lexicographic term order: lower total degree first; within a degree,
// lexicographically larger exponent vectors first (so x precedes y). Map
// iteration in this order is the canonical term order used for printing.
struct GradedLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// Sparse multivariate polynomial over exact rationals. Stored coefficients
// are never zero and every exponent vector has length dimension().
// Immutable in practice once built; safe to share across threads.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexLess>;

  explicit Polynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static Polynomial constant(std::vector<std::string> vars, const Rational& value);
  static Polynomial variable(std::vector<std::string> vars, std::size_t index);

  std::size_t dimension() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  Rational constant_term() const;
  Rational coefficient(const Exponents& e) const;
  unsigned total_degree() const;
  unsigned degree_in(std::size_t var_index) const;
  // Largest coefficient magnitude, as a double; 0 for the zero polynomial.
  double coefficient_scale() const;

  // Adds coeff * x^e, merging with an existing term and dropping zeros.
  void add_term(const Exponents& e, const Rational& coeff);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& scalar);
  bool operator==(const Polynomial& rhs) const;

  Polynomial pow(unsigned e) const;

  // Exact partial derivative with respect to variable var_index (0-based).
  Polynomial differentiate(std::size_t var_index) const;

  Complex evaluate(std::span<const Complex> z) const;
  double evaluate(std::span<const double> z) const;
  Rational evaluate_exact(std::span<const Rational> z) const;

  // Invariance under every transposition of variables; adjacent
  // transpositions generate the full symmetric group, so only those are
  // checked.
  bool is_symmetric() const;

  // j(t) = P(t,...,t) with exact coefficients.
  UnivariatePolynomial diagonal_restriction() const;

  // True iff the integer lattice generated by the exponent vectors of the
  // support equals Z^d (gcd of all d x d minors of the exponent matrix is 1).
  bool support_lattice_spans() const;

  // P with x_i replaced by x_j (exponents merged); used to test divisibility
  // by x_i - x_j, which holds iff the result is zero.
  Polynomial substitute_equal(std::size_t i, std::size_t j) const;

  // Canonical rendering; parse(str()) reproduces the polynomial exactly.
  std::string str() const;

 private:
  std::vector<std::string> vars_;
  TermMap terms_;
};

Polynomial operator+(Polynomial lhs, const Polynomial& rhs);
Polynomial operator-(Polynomial lhs, const Polynomial& rhs);
Polynomial operator*(Polynomial lhs, const Polynomial& rhs);
Polynomial operator*(const Rational& scalar, Polynomial p);

// Parses `text` against the expression grammar
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := rational | var | '(' expr ')'
//   rational := int ('/' uint)?
// Whitespace is insignificant; '/' joins integer literals only; implicit
// multiplication is not supported. Throws ParseError with the offending
// position.
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars);

}  // namespace diagasym
