#pragma once

#include <span>
#include <vector>

#include "diagasym/numeric.hpp"
#include "diagasym/univariate.hpp"

namespace diagasym {

struct RootSolveOptions {
  int max_qr_iterations = 500;
  double qr_tolerance = 1e-12;
  int polish_iterations = 16;
};

// All complex roots of sum_k coeffs[k] t^k (ascending order, leading
// coefficient nonzero), as eigenvalues of the companion matrix computed with
// an unshifted complex QR iteration; stubborn 2x2 diagonal blocks (equal
// modulus pairs) are solved directly, and every root is Newton-polished
// against the input polynomial. Roots are returned sorted by (re, im).
std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs,
                                      const RootSolveOptions& opts = {});

std::vector<Complex> polynomial_roots(const UnivariatePolynomial& p,
                                      const RootSolveOptions& opts = {});

}  // namespace diagasym
