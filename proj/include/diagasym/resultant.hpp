#pragma once

#include "diagasym/polynomial.hpp"
#include "diagasym/univariate.hpp"

namespace diagasym {

// Writes a bivariate polynomial as a polynomial in its second variable with
// univariate (first-variable) coefficients, ascending in the second variable.
std::vector<UnivariatePolynomial> coefficients_in_second_var(const Polynomial& p);

// Sylvester resultant of two bivariate polynomials eliminating the second
// variable; exact over the rationals (Bareiss fraction-free elimination on
// the Sylvester matrix, entries in Q[x]). Requires both arguments to have
// positive degree in the second variable. The zero polynomial is returned
// when the resultant vanishes identically (non-finite solution set).
UnivariatePolynomial sylvester_resultant(const Polynomial& p, const Polynomial& q);

}  // namespace diagasym
