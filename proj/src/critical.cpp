#include "diagasym/critical.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>

#include "diagasym/resultant.hpp"
#include "diagasym/roots.hpp"
#include "diagasym/univariate.hpp"

namespace diagasym {

Direction::Direction(std::vector<long long> entries) : a(std::move(entries)) {
  if (a.empty()) throw Error("empty direction");
  for (long long v : a)
    if (v < 1) throw Error("direction entries must be positive");
}

bool Direction::all_equal() const {
  return std::all_of(a.begin(), a.end(), [&](long long v) { return v == a.front(); });
}

CriticalSystem build_critical_system(const Polynomial& J, const Direction& a) {
  const std::size_t d = J.dimension();
  if (d < 2) throw Error("critical systems need at least two variables");
  if (a.dimension() != d) throw Error("direction dimension mismatch");

  CriticalSystem sys;
  sys.equations.push_back(J);
  const Polynomial Jd = J.differentiate(d - 1);
  const Polynomial xd = Polynomial::variable(J.vars(), d - 1);
  for (std::size_t i = 0; i + 1 < d; ++i) {
    const Polynomial Ji = J.differentiate(i);
    const Polynomial xi = Polynomial::variable(J.vars(), i);
    Polynomial eq = Rational(a.last()) * (xi * Ji) - Rational(a.a[i]) * (xd * Jd);
    sys.equations.push_back(std::move(eq));
  }
  return sys;
}

double system_residual(const CriticalSystem& sys, std::span<const Complex> z) {
  double worst = 0.0;
  for (const auto& eq : sys.equations)
    worst = std::max(worst, std::abs(eq.evaluate(z)));
  return worst;
}

bool residual_check(const CriticalSystem& sys, std::span<const Complex> z, double tol) {
  if (tol <= 0) throw Error("residual tolerance must be positive");
  return system_residual(sys, z) <= tol;
}

CriticalPoint make_critical_point(const Polynomial& J, const CriticalSystem& sys,
                                  std::vector<Complex> z, const SolverTolerances& tol) {
  CriticalPoint p;
  p.residual = system_residual(sys, z);
  p.is_positive_real = std::all_of(z.begin(), z.end(), [&](const Complex& c) {
    return std::abs(c.imag()) <= tol.positivity && c.real() > 0.0;
  });
  p.torus_moduli.reserve(z.size());
  for (const auto& c : z) p.torus_moduli.push_back(std::abs(c));

  const double scale = std::max(J.coefficient_scale(), 1e-300);
  const std::size_t d = J.dimension();
  bool smooth = false;
  for (std::size_t i = 0; i < d; ++i) {
    if (std::abs(J.differentiate(i).evaluate(z)) > tol.smooth_rel * scale) {
      smooth = true;
      break;
    }
  }
  p.is_smooth = smooth;
  p.is_simple_in_last =
      std::abs(J.differentiate(d - 1).evaluate(z)) > tol.smooth_rel * scale;
  p.point = std::move(z);
  return p;
}

CriticalPoint solve_symmetric_positive(const Polynomial& J, const Direction& a,
                                       const SolverTolerances& tol) {
  if (!J.is_symmetric())
    throw Error("symmetric solve requires a symmetric denominator");
  if (!a.all_equal())
    throw Error("symmetric solve requires an all-equal direction");
  const double c = unique_positive_root(J.diagonal_restriction());
  std::vector<Complex> z(J.dimension(), Complex{c, 0.0});
  return make_critical_point(J, build_critical_system(J, a), std::move(z), tol);
}

namespace {

std::string point_to_string(std::span<const double> x) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out << ", ";
    out << x[i];
  }
  out << ")";
  return out.str();
}

// Damped Newton on the critical system in u = log x; the iterate stays in
// the positive orthant by construction.
std::optional<std::vector<double>> newton_positive_from_seed(
    const CriticalSystem& sys, const std::vector<std::vector<Polynomial>>& partials,
    std::span<const double> seed, double target_residual) {
  const std::size_t d = sys.dimension();
  std::vector<double> u(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (seed[i] <= 0.0) return std::nullopt;
    u[i] = std::log(seed[i]);
  }

  const auto eval_residual = [&](const std::vector<double>& uu,
                                 Eigen::VectorXd* out) -> double {
    std::vector<double> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = std::exp(uu[i]);
    double norm2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double f = sys.equations[j].evaluate(std::span<const double>(x));
      if (out) (*out)(static_cast<long>(j)) = f;
      norm2 += f * f;
    }
    return std::sqrt(norm2);
  };

  Eigen::VectorXd f(static_cast<long>(d));
  double fnorm = eval_residual(u, &f);

  // Iterate past the acceptance residual down to the float floor; the
  // coordinates feed n-th powers downstream, so every digit counts.
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<double> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = std::exp(u[i]);

    Eigen::MatrixXd jac(static_cast<long>(d), static_cast<long>(d));
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i)
        jac(static_cast<long>(j), static_cast<long>(i)) =
            x[i] * partials[j][i].evaluate(std::span<const double>(x));

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
    Eigen::VectorXd delta = lu.solve(-f);
    if (!delta.allFinite()) return std::nullopt;
    // Trust-region style cap keeps exp() in range.
    const double dinf = delta.lpNorm<Eigen::Infinity>();
    if (dinf > 5.0) delta *= 5.0 / dinf;

    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving) {
      std::vector<double> trial(d);
      for (std::size_t i = 0; i < d; ++i) trial[i] = u[i] + lambda * delta(static_cast<long>(i));
      Eigen::VectorXd ftrial(static_cast<long>(d));
      const double tnorm = eval_residual(trial, &ftrial);
      if (tnorm < fnorm) {
        u = std::move(trial);
        f = ftrial;
        fnorm = tnorm;
        accepted = true;
        break;
      }
      lambda /= 2.0;
    }
    if (!accepted) break;  // stagnated; final residual test decides
  }

  double finf = 0.0;
  for (long j = 0; j < static_cast<long>(d); ++j) finf = std::max(finf, std::abs(f(j)));
  if (finf > target_residual) return std::nullopt;
  std::vector<double> x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = std::exp(u[i]);
  return x;
}

std::vector<std::vector<double>> default_seed_grid(const Polynomial& J,
                                                   const Direction& a) {
  const std::size_t d = J.dimension();
  std::vector<double> axis;
  if (d <= 3)
    axis = {0.1, 0.3, 0.5, 0.7, 0.9};
  else if (d <= 6)
    axis = {0.25, 0.5, 0.75};
  else
    axis = {0.5};

  std::vector<std::vector<double>> seeds;
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    std::vector<double> s(d);
    for (std::size_t i = 0; i < d; ++i) s[i] = axis[idx[i]];
    seeds.push_back(std::move(s));
    std::size_t k = 0;
    while (k < d && ++idx[k] == axis.size()) idx[k++] = 0;
    if (k == d) break;
  }

  // The diagonal positive root seeds the symmetric case directly.
  if (J.is_symmetric() && a.all_equal()) {
    try {
      const double c = unique_positive_root(J.diagonal_restriction());
      seeds.push_back(std::vector<double>(d, c));
    } catch (const Error&) {
      // no usable diagonal root; grid seeds remain
    }
  }
  return seeds;
}

}  // namespace

CriticalPoint solve_positive_newton(const Polynomial& J, const Direction& a,
                                    std::span<const std::vector<double>> seeds,
                                    const SolverTolerances& tol) {
  const CriticalSystem sys = build_critical_system(J, a);
  const std::size_t d = sys.dimension();

  std::vector<std::vector<Polynomial>> partials(d);
  for (std::size_t j = 0; j < d; ++j) {
    partials[j].reserve(d);
    for (std::size_t i = 0; i < d; ++i)
      partials[j].push_back(sys.equations[j].differentiate(i));
  }

  std::vector<std::vector<double>> all_seeds = default_seed_grid(J, a);
  all_seeds.insert(all_seeds.end(), seeds.begin(), seeds.end());

  std::vector<std::optional<std::vector<double>>> results(all_seeds.size());
#pragma omp parallel for schedule(dynamic)
  for (long s = 0; s < static_cast<long>(all_seeds.size()); ++s) {
    results[static_cast<std::size_t>(s)] = newton_positive_from_seed(
        sys, partials, all_seeds[static_cast<std::size_t>(s)], tol.newton_residual);
  }

  // Deterministic reduction: cluster converged points in seed order and keep
  // the lexicographically smallest representative of each cluster.
  std::vector<std::vector<double>> clusters;
  for (const auto& r : results) {
    if (!r) continue;
    bool merged = false;
    for (auto& rep : clusters) {
      double dist = 0.0;
      for (std::size_t i = 0; i < d; ++i)
        dist = std::max(dist, std::abs(rep[i] - (*r)[i]));
      if (dist <= tol.cluster * 10) {
        if (std::lexicographical_compare(r->begin(), r->end(), rep.begin(), rep.end()))
          rep = *r;
        merged = true;
        break;
      }
    }
    if (!merged) clusters.push_back(*r);
  }

  if (clusters.empty())
    throw Error("no convergence from any seed (" + std::to_string(all_seeds.size()) +
                " seeds tried at residual " + format_double(tol.newton_residual) + ")");
  if (clusters.size() > 1) {
    std::ostringstream msg;
    msg << "converged to distinct positive points — uniqueness hypothesis "
           "violated: ";
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      if (i) msg << " and ";
      msg << point_to_string(clusters[i]);
    }
    throw Error(msg.str());
  }

  std::vector<Complex> z(d);
  for (std::size_t i = 0; i < d; ++i) z[i] = Complex{clusters[0][i], 0.0};
  return make_critical_point(J, sys, std::move(z), tol);
}

namespace {

// Polishes a candidate bivariate solution with complex Newton on the 2x2
// system; returns the refined point when it reaches `target`.
std::optional<std::array<Complex, 2>> polish_bivariate(
    const CriticalSystem& sys, const std::vector<std::vector<Polynomial>>& partials,
    std::array<Complex, 2> z, double target) {
  for (int iter = 0; iter < 60; ++iter) {
    const std::span<const Complex> zs(z.data(), 2);
    const Complex f0 = sys.equations[0].evaluate(zs);
    const Complex f1 = sys.equations[1].evaluate(zs);
    if (std::max(std::abs(f0), std::abs(f1)) <= target * 0.01) break;
    const Complex a00 = partials[0][0].evaluate(zs), a01 = partials[0][1].evaluate(zs);
    const Complex a10 = partials[1][0].evaluate(zs), a11 = partials[1][1].evaluate(zs);
    const Complex det = a00 * a11 - a01 * a10;
    if (std::abs(det) < 1e-250) break;
    const Complex dx = (f0 * a11 - f1 * a01) / det;
    const Complex dy = (a00 * f1 - a10 * f0) / det;
    z[0] -= dx;
    z[1] -= dy;
    if (std::max(std::abs(dx), std::abs(dy)) <= 1e-15 * (std::abs(z[0]) + std::abs(z[1])))
      break;
  }
  const std::span<const Complex> zs(z.data(), 2);
  const double res = std::max(std::abs(sys.equations[0].evaluate(zs)),
                              std::abs(sys.equations[1].evaluate(zs)));
  if (res > target) return std::nullopt;
  return z;
}

std::vector<Complex> dedupe_complex(std::vector<Complex> xs, double tol_abs) {
  std::vector<Complex> out;
  for (const auto& x : xs) {
    bool seen = false;
    for (const auto& y : out)
      if (std::abs(x - y) <= tol_abs * std::max(1.0, std::abs(y))) seen = true;
    if (!seen) out.push_back(x);
  }
  return out;
}

}  // namespace

std::vector<CriticalPoint> solve_bivariate_complete(const Polynomial& J,
                                                    const Direction& a,
                                                    const SolverTolerances& tol) {
  if (J.dimension() != 2) throw Error("complete enumeration is implemented for d = 2");
  const CriticalSystem sys = build_critical_system(J, a);
  const Polynomial& E2 = sys.equations[1];
  if (E2.is_zero())
    throw Error("the second critical equation is identically zero — non-finite critical set");

  std::vector<std::vector<Polynomial>> partials(2);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < 2; ++i)
      partials[j].push_back(sys.equations[j].differentiate(i));

  const unsigned dyJ = J.degree_in(1);
  const unsigned dyE = E2.degree_in(1);

  // x-coordinates of all candidate solutions.
  UnivariatePolynomial rx;
  if (dyJ >= 1 && dyE >= 1) {
    rx = sylvester_resultant(J, E2);
    if (rx.is_zero())
      throw Error("resultant identically zero — non-finite critical set");
  } else {
    // One equation is univariate in x already.
    const Polynomial& uni = (dyJ == 0) ? J : E2;
    std::vector<Rational> cs(uni.is_zero() ? 1 : uni.degree_in(0) + 1, Rational(0));
    for (const auto& [e, c] : uni.terms()) cs[e[0]] = c;
    rx = UnivariatePolynomial(std::move(cs));
    if (rx.is_zero())
      throw Error("resultant identically zero — non-finite critical set");
  }
  if (rx.degree() == 0) return {};

  const std::vector<Complex> xs =
      dedupe_complex(polynomial_roots(rx.squarefree_part()), tol.cluster);

  // Back-substitute: y-roots come from whichever equation still involves y.
  const Polynomial& ypoly = (dyJ >= 1) ? J : E2;
  const auto ycoeffs = coefficients_in_second_var(ypoly);

  std::vector<std::array<Complex, 2>> accepted;
  for (const Complex& x : xs) {
    std::vector<Complex> cy(ycoeffs.size());
    for (std::size_t k = 0; k < ycoeffs.size(); ++k) cy[k] = ycoeffs[k].evaluate(x);
    for (const Complex& y : polynomial_roots(std::span<const Complex>(cy))) {
      auto polished = polish_bivariate(sys, partials, {x, y}, tol.bivariate_residual);
      if (polished) accepted.push_back(*polished);
    }
  }

  // Dedupe and order deterministically.
  std::vector<std::array<Complex, 2>> unique_pts;
  for (const auto& p : accepted) {
    bool seen = false;
    for (const auto& q : unique_pts) {
      const double dist = std::max(std::abs(p[0] - q[0]), std::abs(p[1] - q[1]));
      if (dist <= tol.cluster * 10) seen = true;
    }
    if (!seen) unique_pts.push_back(p);
  }
  std::sort(unique_pts.begin(), unique_pts.end(),
            [](const std::array<Complex, 2>& u, const std::array<Complex, 2>& v) {
              const auto key = [](const std::array<Complex, 2>& w) {
                return std::array<double, 4>{w[0].real(), w[0].imag(), w[1].real(),
                                             w[1].imag()};
              };
              return key(u) < key(v);
            });

  std::vector<CriticalPoint> out;
  out.reserve(unique_pts.size());
  for (auto& p : unique_pts)
    out.push_back(make_critical_point(J, sys, {p[0], p[1]}, tol));
  return out;
}

namespace {

// True when eq == kappa * (x_i - x_d): two terms, unit exponents, opposite
// coefficients.
bool is_scaled_coordinate_difference(const Polynomial& eq, std::size_t i, std::size_t d1) {
  if (eq.term_count() != 2) return false;
  Exponents ei(eq.dimension(), 0), ed(eq.dimension(), 0);
  ei[i] = 1;
  ed[d1] = 1;
  const Rational ci = eq.coefficient(ei);
  const Rational cd = eq.coefficient(ed);
  return ci != 0 && ci == -cd;
}

}  // namespace

ContribResult classify_contributing(const Polynomial& J, const Direction& a,
                                    std::span<const CriticalPoint> points,
                                    bool points_complete, const SolverTolerances& tol) {
  ContribResult res;

  std::vector<const CriticalPoint*> positives;
  for (const auto& p : points)
    if (p.is_positive_real) positives.push_back(&p);
  if (positives.empty()) throw Error("no positive critical point supplied");
  if (positives.size() > 1)
    throw Error("multiple positive points — uniqueness hypothesis violated");
  res.positive_point = *positives.front();

  // Torus companions: every coordinate modulus matches c's within the
  // relative tolerance.
  for (const auto& p : points) {
    if (&p == positives.front()) continue;
    bool on_torus = true;
    for (std::size_t i = 0; i < p.torus_moduli.size(); ++i) {
      const double ref = std::max(res.positive_point.torus_moduli[i], 1e-300);
      if (std::abs(p.torus_moduli[i] - ref) > tol.torus_rel * ref) {
        on_torus = false;
        break;
      }
    }
    if (on_torus) res.companions_on_torus.push_back(p);
  }

  // Aperiodic fast path: J = J(0) (1 - P) with P >= 0, P(0) = 0, and
  // full-lattice support. The normalization by J(0) leaves the variety
  // untouched.
  res.aperiodic_case = false;
  const Rational j0 = J.constant_term();
  if (j0 != 0) {
    Polynomial scaled = J;
    scaled *= Rational(1) / j0;
    Polynomial P = Polynomial::constant(J.vars(), 1) - scaled;
    if (!P.is_zero()) {
      bool nonneg = true;
      for (const auto& [e, c] : P.terms())
        if (c < 0) nonneg = false;
      if (nonneg && P.support_lattice_spans()) res.aperiodic_case = true;
    }
  }

  // A proportionality equation that vanishes identically on x_i = x_d with a
  // nonconstant cofactor leaves a potentially unresolved diagonal component;
  // enumeration through it is reported but not certified.
  const CriticalSystem sys = build_critical_system(J, a);
  const std::size_t d = J.dimension();
  res.diagonal_degenerate = false;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    const Polynomial& eq = sys.equations[i + 1];
    if (eq.is_zero()) {
      res.diagonal_degenerate = true;
      continue;
    }
    if (eq.substitute_equal(i, d - 1).is_zero() &&
        !is_scaled_coordinate_difference(eq, i, d - 1))
      res.diagonal_degenerate = true;
  }

  res.contrib_certain =
      res.aperiodic_case ||
      (points_complete && res.companions_on_torus.empty() && !res.diagonal_degenerate);
  return res;
}

}  // namespace diagasym
