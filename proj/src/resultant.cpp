#include "diagasym/resultant.hpp"

namespace diagasym {

std::vector<UnivariatePolynomial> coefficients_in_second_var(const Polynomial& p) {
  if (p.dimension() != 2) throw Error("expected a bivariate polynomial");
  const unsigned dy = p.is_zero() ? 0 : p.degree_in(1);
  std::vector<std::vector<Rational>> rows(dy + 1);
  for (auto& r : rows) r.assign(p.is_zero() ? 1 : p.degree_in(0) + 1, Rational(0));
  for (const auto& [e, c] : p.terms()) rows[e[1]][e[0]] = c;
  std::vector<UnivariatePolynomial> out;
  out.reserve(dy + 1);
  for (auto& r : rows) out.emplace_back(std::move(r));
  return out;
}

namespace {

// Determinant of a square matrix over Q[x] by Bareiss fraction-free
// elimination; every division is exact in the polynomial ring.
UnivariatePolynomial bareiss_determinant(std::vector<std::vector<UnivariatePolynomial>> m) {
  const std::size_t n = m.size();
  if (n == 0) return UnivariatePolynomial::constant(1);
  int sign = 1;
  UnivariatePolynomial prev = UnivariatePolynomial::constant(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return UnivariatePolynomial();  // zero determinant
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        UnivariatePolynomial num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = num.is_zero() ? UnivariatePolynomial() : num.divide_exact(prev);
      }
      m[i][k] = UnivariatePolynomial();
    }
    prev = m[k][k];
  }
  UnivariatePolynomial det = m[n - 1][n - 1];
  if (sign < 0) det = -det;
  return det;
}

}  // namespace

UnivariatePolynomial sylvester_resultant(const Polynomial& p, const Polynomial& q) {
  const auto pc = coefficients_in_second_var(p);
  const auto qc = coefficients_in_second_var(q);
  const int dp = static_cast<int>(pc.size()) - 1;
  const int dq = static_cast<int>(qc.size()) - 1;
  if (dp < 1 || dq < 1)
    throw Error("sylvester resultant requires positive degree in the eliminated variable");

  const std::size_t n = static_cast<std::size_t>(dp + dq);
  std::vector<std::vector<UnivariatePolynomial>> m(
      n, std::vector<UnivariatePolynomial>(n, UnivariatePolynomial()));
  // dq rows of p's coefficients (descending), then dp rows of q's.
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k) m[r][r + k] = pc[static_cast<std::size_t>(dp - k)];
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k) m[dq + r][r + k] = qc[static_cast<std::size_t>(dq - k)];

  return bareiss_determinant(std::move(m));
}

}  // namespace diagasym
