#include "diagasym/asymptotics.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace diagasym {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_last_partial(const Polynomial& J, const CriticalPoint& c) {
  if (!c.is_simple_in_last)
    throw HypothesisError("simple-zero-last-coordinate",
                          "J_d vanishes at the contributing point — the "
                          "simple-zero hypothesis in the last coordinate fails");
  if (std::abs(c.point.back()) == 0.0)
    throw HypothesisError("nonzero-last-coordinate",
                          "the last coordinate of the contributing point is zero");
}

}  // namespace

HessianData hessian_matrix(const Polynomial& J, const CriticalPoint& c) {
  require_last_partial(J, c);
  const std::size_t d = J.dimension();
  if (c.point.size() != d) throw Error("point dimension mismatch");
  const std::span<const Complex> z(c.point.data(), d);

  std::vector<Complex> first(d);
  for (std::size_t i = 0; i < d; ++i) first[i] = J.differentiate(i).evaluate(z);
  std::vector<std::vector<Complex>> second(d, std::vector<Complex>(d));
  for (std::size_t i = 0; i < d; ++i) {
    const Polynomial Ji = J.differentiate(i);
    for (std::size_t j = i; j < d; ++j)
      second[i][j] = second[j][i] = Ji.differentiate(j).evaluate(z);
  }

  const Complex cd = c.point[d - 1];
  const Complex Jd = first[d - 1];
  const Complex Jdd = second[d - 1][d - 1];

  HessianData out;
  out.matrix.assign(d - 1, std::vector<Complex>(d - 1));
  for (std::size_t l = 0; l + 1 < d; ++l) {
    const Complex cl = c.point[l];
    const Complex Jl = first[l];
    const Complex Jld = second[l][d - 1];
    for (std::size_t m = l; m + 1 < d; ++m) {
      if (m == l) {
        out.matrix[l][l] =
            (cl * Jl) / (cd * Jd) +
            (cl * cl) / (cd * cd * Jd * Jd) *
                (Jl * Jl + cd * (Jd * second[l][l] - 2.0 * Jl * Jld + (Jl * Jl / Jd) * Jdd));
      } else {
        const Complex cm = c.point[m];
        const Complex Jm = first[m];
        const Complex Jdm = second[d - 1][m];
        const Complex entry =
            (cl * cm) / (cd * cd * Jd * Jd) *
            (Jm * Jl + cd * (Jd * second[l][m] - Jm * Jld - Jl * Jdm + (Jl * Jm / Jd) * Jdd));
        out.matrix[l][m] = entry;
        out.matrix[m][l] = entry;
      }
    }
  }

  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> h(d - 1, d - 1);
  for (std::size_t l = 0; l + 1 < d; ++l)
    for (std::size_t m = 0; m + 1 < d; ++m)
      h(static_cast<long>(l), static_cast<long>(m)) = out.matrix[l][m];
  out.determinant = Eigen::PartialPivLU<decltype(h)>(h).determinant();
  return out;
}

Complex hessian_det_symmetric(const Polynomial& J, const CriticalPoint& c) {
  if (!J.is_symmetric())
    throw Error("symmetric Hessian shortcut requires a symmetric denominator");
  require_last_partial(J, c);
  const std::size_t d = J.dimension();
  for (std::size_t i = 0; i + 1 < d; ++i)
    if (std::abs(c.point[i] - c.point[d - 1]) >
        1e-9 * std::max(1.0, std::abs(c.point[d - 1])))
      throw Error("symmetric Hessian shortcut requires a diagonal point");

  const std::span<const Complex> z(c.point.data(), d);
  const Polynomial Jd_poly = J.differentiate(d - 1);
  const Complex Jd = Jd_poly.evaluate(z);
  const Complex Jdd = Jd_poly.differentiate(d - 1).evaluate(z);
  const Complex Jd1 = Jd_poly.differentiate(0).evaluate(z);
  const Complex base = 1.0 + (c.point[d - 1] / Jd) * (Jdd - Jd1);
  return static_cast<double>(d) * std::pow(base, static_cast<double>(d - 1));
}

Complex leading_coefficient_b0(const Polynomial& I, const Polynomial& J,
                               const CriticalPoint& c, Complex h) {
  if (std::abs(h) == 0.0)
    throw HypothesisError("nonzero-hessian",
                          "h = 0 — the leading-coefficient formula is inapplicable");
  const std::size_t d = J.dimension();
  const std::span<const Complex> z(c.point.data(), d);
  const Complex Jd = J.differentiate(d - 1).evaluate(z);
  const Complex cdJd = c.point[d - 1] * Jd;
  if (std::abs(cdJd) == 0.0)
    throw HypothesisError("nonzero-cd-Jd",
                          "c_d J_d vanishes at the contributing point");
  const Complex radicand = std::pow(Complex{kTwoPi, 0.0}, static_cast<double>(d - 1)) * h;
  return I.evaluate(z) / (-cdJd * std::sqrt(radicand));
}

AsymptoticResult assemble_asymptotics(const Polynomial& I, const Polynomial& J,
                                      const Direction& a, const ContribResult& contrib,
                                      bool allow_uncertain) {
  if (!contrib.contrib_certain && !allow_uncertain)
    throw HypothesisError("contributing-certification",
                          "the contributing-point set is not certified; pass "
                          "allow_uncertain to proceed with the positive point");
  const CriticalPoint& c = contrib.positive_point;
  if (!c.is_smooth)
    throw HypothesisError("smoothness",
                          "every first partial of J vanishes at the contributing "
                          "point — the smooth-point hypothesis fails");
  require_last_partial(J, c);

  const std::size_t d = J.dimension();
  AsymptoticResult res{.direction = a,
                       .point = c,
                       .hessian = {},
                       .b0 = {0.0, 0.0},
                       .exponent = Rational(1 - static_cast<long long>(d), 2),
                       .growth_per_step = 0.0,
                       .last_coordinate_weight = a.last(),
                       .error_order = "O(n_d^{-(d+1)/2}) relative to the leading term"};

  bool diagonal_point = true;
  for (std::size_t i = 0; i + 1 < d; ++i)
    if (std::abs(c.point[i] - c.point[d - 1]) >
        1e-9 * std::max(1.0, std::abs(c.point[d - 1])))
      diagonal_point = false;

  res.hessian = hessian_matrix(J, c);
  if (J.is_symmetric() && a.all_equal() && diagonal_point) {
    const Complex h_sym = hessian_det_symmetric(J, c);
    res.hessian.cross_check_rel_error =
        std::abs(res.hessian.determinant - h_sym) / std::max(std::abs(h_sym), 1e-300);
    res.hessian.determinant = h_sym;
    res.hessian.symmetric_shortcut_used = true;
  }

  res.b0 = leading_coefficient_b0(I, J, c, res.hessian.determinant);

  double log_growth = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    log_growth -= static_cast<double>(a.a[i]) * std::log(std::abs(c.point[i]));
  res.growth_per_step = std::exp(log_growth);
  return res;
}

BigFloat evaluate_leading_term(const AsymptoticResult& res, long long n) {
  if (n < 1) throw Error("leading term is defined for n >= 1");
  if (!res.point.is_positive_real)
    throw Error("leading-term evaluation requires the positive real contributing point");
  if (!(res.b0.real() > 0.0) ||
      std::abs(res.b0.imag()) > 1e-9 * std::abs(res.b0.real()))
    throw Error("leading coefficient is not positive real; cannot evaluate in logs");

  const std::size_t d = res.point.point.size();
  BigFloat log_term = log(BigFloat(res.b0.real()));
  for (std::size_t i = 0; i < d; ++i) {
    const BigFloat ci(res.point.point[i].real());
    log_term -= BigFloat(res.direction.a[i]) * BigFloat(n) * log(ci);
  }
  const BigFloat nd = BigFloat(res.last_coordinate_weight) * BigFloat(n);
  log_term += BigFloat(res.exponent) * log(nd);
  return exp(log_term);
}

}  // namespace diagasym
