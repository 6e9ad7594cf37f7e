#pragma once

#include <span>
#include <vector>

#include "diagasym/polynomial.hpp"

namespace diagasym {

// Diagonal direction (a_1, ..., a_d): the coefficients studied are those with
// index (a_1 n, ..., a_d n). Only the ratios a_i / a_d enter the critical
// system, but the integers are kept exact.
struct Direction {
  explicit Direction(std::vector<long long> entries);

  std::size_t dimension() const { return a.size(); }
  bool all_equal() const;
  long long last() const { return a.back(); }
  bool operator==(const Direction& rhs) const { return a == rhs.a; }

  std::vector<long long> a;
};

// Equations [J, a_d x_i J_i - a_i x_d J_d (i < d)]; the shared step count n
// cancels, so the system depends on the direction alone.
struct CriticalSystem {
  std::vector<Polynomial> equations;
  std::size_t dimension() const { return equations.size(); }
};

struct SolverTolerances {
  double newton_residual = 1e-10;   // acceptance residual for the positive solver
  double bivariate_residual = 1e-9; // acceptance residual for enumerated points
  double positivity = 1e-9;         // |imag| bound for "positive real"
  double torus_rel = 1e-8;          // relative modulus match per coordinate
  double smooth_rel = 1e-8;         // |J_i(c)| > smooth_rel * scale(J)
  double cluster = 1e-8;            // distance under which points coincide
};

struct CriticalPoint {
  std::vector<Complex> point;
  double residual = 0.0;
  bool is_positive_real = false;
  bool is_smooth = false;
  bool is_simple_in_last = false;
  std::vector<double> torus_moduli;
};

CriticalSystem build_critical_system(const Polynomial& J, const Direction& a);

double system_residual(const CriticalSystem& sys, std::span<const Complex> z);
bool residual_check(const CriticalSystem& sys, std::span<const Complex> z, double tol);

// Fills residual, positivity, smoothness, simple-zero and modulus data for a
// solved point.
CriticalPoint make_critical_point(const Polynomial& J, const CriticalSystem& sys,
                                  std::vector<Complex> z,
                                  const SolverTolerances& tol = {});

// Positive point for symmetric J and an all-equal direction: the unique
// positive root c of j(t) = J(t,...,t), taken as (c,...,c).
CriticalPoint solve_symmetric_positive(const Polynomial& J, const Direction& a,
                                       const SolverTolerances& tol = {});

// Damped Newton on the critical system in log-coordinates (iterates stay in
// the positive orthant), multi-started from a deterministic seed grid plus
// caller seeds. Seeds run concurrently; the reduction is deterministic.
// Throws when no seed converges and when distinct positive solutions are
// found (uniqueness violation; both points are reported in the message).
CriticalPoint solve_positive_newton(const Polynomial& J, const Direction& a,
                                    std::span<const std::vector<double>> seeds = {},
                                    const SolverTolerances& tol = {});

// All isolated complex critical points for d = 2: Sylvester resultant in the
// first variable, companion-matrix roots, back-substitution, Newton polish.
// Throws when the second critical equation is identically zero or the
// resultant vanishes identically (non-finite critical set).
std::vector<CriticalPoint> solve_bivariate_complete(const Polynomial& J,
                                                    const Direction& a,
                                                    const SolverTolerances& tol = {});

struct ContribResult {
  CriticalPoint positive_point;
  std::vector<CriticalPoint> companions_on_torus;
  bool aperiodic_case = false;
  // A proportionality equation vanishes identically on a diagonal x_i = x_d
  // with a nonconstant cofactor; candidate enumeration through that equation
  // is not taken as certification-grade.
  bool diagonal_degenerate = false;
  bool contrib_certain = false;
};

// Classifies `points` (which must contain exactly one positive real point)
// against the contributing-point criteria: the aperiodic nonnegative case
// J = 1 - P certifies {c} outright; otherwise certification needs a complete
// enumeration with no torus companions and a nondegenerate system.
// `points_complete` states whether `points` exhausts the critical set.
ContribResult classify_contributing(const Polynomial& J, const Direction& a,
                                    std::span<const CriticalPoint> points,
                                    bool points_complete,
                                    const SolverTolerances& tol = {});

}  // namespace diagasym
