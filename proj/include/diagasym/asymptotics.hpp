#pragma once

#include <string>
#include <vector>

#include "diagasym/critical.hpp"
#include "diagasym/numeric.hpp"
#include "diagasym/polynomial.hpp"

namespace diagasym {

struct HessianData {
  std::vector<std::vector<Complex>> matrix;  // (d-1) x (d-1), symmetric
  Complex determinant{0.0, 0.0};
  bool symmetric_shortcut_used = false;
  // Relative |h_general - h_symmetric| / |h| when both paths were computed;
  // negative when only one path ran.
  double cross_check_rel_error = -1.0;
};

// Phase Hessian at the contributing point from the closed-form entries in
// terms of the partials of J; determinant via LU with partial pivoting.
// Requires J_d(c) != 0 and c_d != 0.
HessianData hessian_matrix(const Polynomial& J, const CriticalPoint& c);

// Closed form d * (1 + (c/J_d)(J_dd - J_d1))^{d-1} for symmetric J at a
// diagonal point c = (c,...,c).
Complex hessian_det_symmetric(const Polynomial& J, const CriticalPoint& c);

// b0 = I(c) / (-c_d J_d(c) sqrt((2 pi)^{d-1} h)), principal square root.
Complex leading_coefficient_b0(const Polynomial& I, const Polynomial& J,
                               const CriticalPoint& c, Complex h);

struct AsymptoticResult {
  Direction direction;
  CriticalPoint point;
  HessianData hessian;
  Complex b0{0.0, 0.0};
  Rational exponent;                // (1 - d) / 2
  double growth_per_step = 0.0;     // prod_i c_i^{-a_i}
  long long last_coordinate_weight = 1;  // a_d, so n_d = a_d * n
  std::string error_order;          // relative error order of the leading term
};

// Full leading-term data for a classified direction. Uses the symmetric
// closed form when J and the direction are symmetric (cross-checked against
// the general matrix), the general Hessian otherwise. Hypothesis failures
// (smoothness, simple zero, h = 0, c_d J_d = 0) raise HypothesisError; an
// uncertain classification raises unless allow_uncertain is set.
AsymptoticResult assemble_asymptotics(const Polynomial& I, const Polynomial& J,
                                      const Direction& a, const ContribResult& contrib,
                                      bool allow_uncertain = false);

// prod_i c_i^{-a_i n} * b0 * (a_d n)^{(1-d)/2}, computed in logs and
// exponentiated in high precision so that huge growth factors do not
// overflow. Requires the certified positive-real path (real positive c, b0).
BigFloat evaluate_leading_term(const AsymptoticResult& res, long long n);

}  // namespace diagasym
