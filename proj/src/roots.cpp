#include "diagasym/roots.hpp"

#include <algorithm>
#include <cmath>

#include "diagasym/errors.hpp"

namespace diagasym {

namespace {

using Matrix = std::vector<std::vector<Complex>>;

// One unshifted QR sweep A := RQ on an upper Hessenberg matrix, via Givens
// rotations on rows (factorization) and columns (recombination).
void qr_sweep(Matrix& a) {
  const std::size_t n = a.size();
  std::vector<Complex> cs(n), ss(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Complex p = a[k][k], q = a[k + 1][k];
    const double r = std::hypot(std::abs(p), std::abs(q));
    Complex c{1.0, 0.0}, s{0.0, 0.0};
    if (r > 0.0) {
      c = p / r;
      s = q / r;
    }
    cs[k] = c;
    ss[k] = s;
    for (std::size_t j = k; j < n; ++j) {
      const Complex t0 = a[k][j], t1 = a[k + 1][j];
      a[k][j] = std::conj(c) * t0 + std::conj(s) * t1;
      a[k + 1][j] = -s * t0 + c * t1;
    }
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Complex c = cs[k], s = ss[k];
    const std::size_t top = std::min(k + 2, n - 1);
    for (std::size_t i = 0; i <= top; ++i) {
      const Complex t0 = a[i][k], t1 = a[i][k + 1];
      a[i][k] = c * t0 + s * t1;
      a[i][k + 1] = -std::conj(s) * t0 + std::conj(c) * t1;
    }
  }
}

std::pair<Complex, Complex> eigenvalues_2x2(Complex a, Complex b, Complex c, Complex d) {
  const Complex tr = a + d;
  const Complex disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
  return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

Complex horner(std::span<const Complex> coeffs, Complex z) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

// Simultaneous-iteration fallback for inputs the unshifted QR cannot
// separate (three or more roots of equal modulus). Deterministic start on a
// slightly asymmetric spiral inside the root bound.
std::vector<Complex> durand_kerner(std::span<const Complex> c, int max_iter) {
  const std::size_t n = c.size() - 1;
  double radius = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    radius = std::max(radius, std::abs(c[i] / c[n]));
  radius = 1.0 + radius;

  std::vector<Complex> z(n);
  const Complex seed = std::polar(0.7 * radius, 0.43);
  z[0] = seed;
  for (std::size_t i = 1; i < n; ++i) z[i] = z[i - 1] * std::polar(1.03, 2.399963);
  for (int iter = 0; iter < max_iter; ++iter) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex denom = c[n];
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) denom *= z[i] - z[j];
      if (std::abs(denom) == 0.0) continue;
      const Complex step = horner(c, z[i]) / denom;
      z[i] -= step;
      worst = std::max(worst, std::abs(step));
    }
    if (worst < 1e-14 * radius) break;
  }
  return z;
}

// True when every returned root annihilates the polynomial and the root sum
// matches Vieta's formula; both fail when the QR iteration stalled on a
// cluster and the polish collapsed distinct roots.
bool roots_plausible(std::span<const Complex> c, std::span<const Complex> roots) {
  const std::size_t n = c.size() - 1;
  double scale = 0.0;
  for (const auto& v : c) scale = std::max(scale, std::abs(v));
  double rmax = 1.0;
  for (const auto& z : roots) rmax = std::max(rmax, std::abs(z));
  double pow_rmax = 1.0;
  for (std::size_t i = 0; i < n; ++i) pow_rmax *= rmax;
  const double value_tol = 1e-6 * scale * pow_rmax;
  for (const auto& z : roots)
    if (std::abs(horner(c, z)) > value_tol) return false;
  Complex sum{0.0, 0.0};
  for (const auto& z : roots) sum += z;
  const Complex vieta = -c[n - 1] / c[n];
  return std::abs(sum - vieta) <= 1e-6 * std::max(1.0, std::abs(vieta)) * rmax * n;
}

}  // namespace

std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs_in,
                                      const RootSolveOptions& opts) {
  std::vector<Complex> coeffs(coeffs_in.begin(), coeffs_in.end());
  while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
  if (coeffs.size() <= 1) return {};

  std::vector<Complex> roots;
  // Exact zero roots deflate immediately.
  std::size_t shift = 0;
  while (shift + 1 < coeffs.size() && std::abs(coeffs[shift]) == 0.0) {
    roots.push_back({0.0, 0.0});
    ++shift;
  }
  std::vector<Complex> c(coeffs.begin() + static_cast<long>(shift), coeffs.end());
  const std::size_t n = c.size() - 1;

  if (n == 1) {
    roots.push_back(-c[0] / c[1]);
  } else {
    // Monic companion matrix, upper Hessenberg.
    Matrix a(n, std::vector<Complex>(n, Complex{0.0, 0.0}));
    for (std::size_t i = 0; i + 1 < n; ++i) a[i + 1][i] = Complex{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) a[i][n - 1] = -c[i] / c[n];

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a[i][n - 1]));
    scale = std::max(scale, 1.0);

    for (int iter = 0; iter < opts.max_qr_iterations; ++iter) {
      qr_sweep(a);
      bool converged = true;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        const double off = std::abs(a[k + 1][k]);
        const double local = std::abs(a[k][k]) + std::abs(a[k + 1][k + 1]);
        if (off <= opts.qr_tolerance * std::max(local, scale))
          a[k + 1][k] = Complex{0.0, 0.0};
        else
          converged = false;
      }
      if (converged) break;
    }

    // Extract eigenvalues from the (block) triangular result. Equal-modulus
    // pairs stall the unshifted iteration in 2x2 blocks; those are solved
    // directly. Larger stalled blocks fall back to their diagonal entries,
    // which the Newton polish then refines.
    for (std::size_t k = 0; k < n;) {
      if (k + 1 < n && std::abs(a[k + 1][k]) != 0.0) {
        const auto [e1, e2] =
            eigenvalues_2x2(a[k][k], a[k][k + 1], a[k + 1][k], a[k + 1][k + 1]);
        roots.push_back(e1);
        roots.push_back(e2);
        k += 2;
      } else {
        roots.push_back(a[k][k]);
        k += 1;
      }
    }
  }

  // Newton polish against the input polynomial.
  std::vector<Complex> deriv(c.size() > 1 ? c.size() - 1 : 0);
  for (std::size_t i = 1; i < c.size(); ++i)
    deriv[i - 1] = c[i] * static_cast<double>(i);
  const std::size_t first_nonzero = roots.size() - n;
  for (std::size_t k = first_nonzero; k < roots.size(); ++k) {
    Complex& z = roots[k];
    for (int it = 0; it < opts.polish_iterations; ++it) {
      const Complex f = horner(c, z);
      const Complex fp = horner(deriv, z);
      if (std::abs(fp) == 0.0) break;
      const Complex step = f / fp;
      z -= step;
      if (std::abs(step) <= 1e-15 * std::abs(z) + 1e-300) break;
    }
  }

  // QR stalls on clusters of three or more equal-modulus eigenvalues; fall
  // back to simultaneous iteration when the result is not a credible root
  // set.
  if (n >= 3 &&
      !roots_plausible(c, std::span<const Complex>(roots).subspan(first_nonzero))) {
    auto dk = durand_kerner(c, 2000);
    for (auto& z : dk) {
      for (int it = 0; it < opts.polish_iterations; ++it) {
        const Complex f = horner(c, z);
        const Complex fp = horner(deriv, z);
        if (std::abs(fp) == 0.0) break;
        const Complex step = f / fp;
        z -= step;
        if (std::abs(step) <= 1e-15 * std::abs(z) + 1e-300) break;
      }
    }
    std::copy(dk.begin(), dk.end(), roots.begin() + static_cast<long>(first_nonzero));
  }

  std::sort(roots.begin(), roots.end(), [](const Complex& u, const Complex& v) {
    if (u.real() != v.real()) return u.real() < v.real();
    return u.imag() < v.imag();
  });
  return roots;
}

std::vector<Complex> polynomial_roots(const UnivariatePolynomial& p,
                                      const RootSolveOptions& opts) {
  if (p.is_zero()) throw Error("roots of the zero polynomial");
  std::vector<Complex> coeffs(p.coeffs().size());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    coeffs[i] = Complex{to_double(p.coeffs()[i]), 0.0};
  return polynomial_roots(coeffs, opts);
}

}  // namespace diagasym
