#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "diagasym/asymptotics.hpp"
#include "diagasym/critical.hpp"
#include "diagasym/polynomial.hpp"

namespace diagasym {

// Dense box of exact series coefficients f_n of F = I/J over
// prod_i [0, bounds_i], filled through the recurrence J * F = I.
class CoefficientTable {
 public:
  explicit CoefficientTable(std::vector<unsigned> bounds);

  const std::vector<unsigned>& bounds() const { return bounds_; }
  std::size_t dimension() const { return bounds_.size(); }
  std::size_t cell_count() const { return values_.size(); }

  std::size_t flat_index(std::span<const unsigned> n) const;
  std::size_t stride(std::size_t i) const { return strides_[i]; }
  const Rational& at(std::span<const unsigned> n) const;
  const std::vector<Rational>& values() const { return values_; }
  std::vector<Rational>& values() { return values_; }

 private:
  std::vector<unsigned> bounds_;
  std::vector<std::size_t> strides_;
  std::vector<Rational> values_;
};

enum class FillSchedule {
  Serial,    // reference: one cell at a time in graded-lex order
  Parallel,  // OpenMP over the cells of each total-degree level
};

// Exact f_n for every n in the box. Cells of total degree g depend only on
// degrees < g, so the parallel schedule is bit-identical to the serial
// reference. Throws when J(0) = 0 ("series undefined at origin") or the
// variable lists disagree.
CoefficientTable compute_coefficient_table(const Polynomial& I, const Polynomial& J,
                                           std::span<const unsigned> bounds,
                                           FillSchedule schedule = FillSchedule::Parallel);

// Re-checks sum_k J_k f_{n-k} = I_n exactly on every cell, independent of the
// fill order that produced the table.
bool verify_recurrence(const CoefficientTable& table, const Polynomial& I,
                       const Polynomial& J);

struct DiagonalSequence {
  Direction direction;
  std::vector<Rational> values;  // values[n] = f_{a_1 n, ..., a_d n}, n = 0..N
};

// Exact slice along the ray; throws when (a_1 N, ..., a_d N) leaves the box.
DiagonalSequence diagonal_sequence(const CoefficientTable& table, const Direction& a,
                                   long long N);

// CSV dump: header n1,...,nd,numerator,denominator; one row per cell in
// graded-lex order.
void write_table_csv(std::ostream& out, const CoefficientTable& table);

struct RatioEntry {
  long long n;
  double ratio;  // f_{a n} / leading term, correct to ~1e-12 relative
};

// Exact-to-predicted ratios for n >= 1. The exact value is converted at
// ~266-bit precision before the division, so the quoted double is correct to
// well under 1e-12 relative. Throws when the directions disagree or the
// leading term vanishes.
std::vector<RatioEntry> ratio_table(const DiagonalSequence& seq,
                                    const AsymptoticResult& asym);

}  // namespace diagasym
