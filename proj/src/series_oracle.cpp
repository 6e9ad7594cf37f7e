#include "diagasym/series_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace diagasym {

CoefficientTable::CoefficientTable(std::vector<unsigned> bounds)
    : bounds_(std::move(bounds)) {
  if (bounds_.empty()) throw Error("empty table bounds");
  strides_.assign(bounds_.size(), 1);
  std::size_t cells = 1;
  for (std::size_t i = bounds_.size(); i-- > 0;) {
    strides_[i] = cells;
    cells *= static_cast<std::size_t>(bounds_[i]) + 1;
  }
  values_.assign(cells, Rational(0));
}

std::size_t CoefficientTable::flat_index(std::span<const unsigned> n) const {
  if (n.size() != bounds_.size()) throw Error("index dimension mismatch");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] > bounds_[i]) throw Error("index outside table bounds");
    flat += static_cast<std::size_t>(n[i]) * strides_[i];
  }
  return flat;
}

const Rational& CoefficientTable::at(std::span<const unsigned> n) const {
  return values_[flat_index(n)];
}

namespace {

// Enumerates all box cells grouped by total degree, as flat indices; cells
// within a level are in lexicographic order. Levels are the dependency
// structure of the fill: a cell of degree g reads only cells of degree < g.
std::vector<std::vector<std::size_t>> level_cells(std::span<const unsigned> bounds) {
  const unsigned max_deg = std::accumulate(bounds.begin(), bounds.end(), 0u);
  std::vector<std::vector<std::size_t>> levels(max_deg + 1);
  std::vector<unsigned> n(bounds.size(), 0);
  std::size_t flat = 0;
  unsigned degree = 0;
  std::vector<std::size_t> strides(bounds.size(), 1);
  for (std::size_t i = bounds.size(); i-- > 1;)
    strides[i - 1] = strides[i] * (static_cast<std::size_t>(bounds[i]) + 1);
  while (true) {
    levels[degree].push_back(flat);
    std::size_t k = bounds.size();
    while (k-- > 0) {
      if (n[k] < bounds[k]) {
        ++n[k];
        ++degree;
        flat += strides[k];
        break;
      }
      degree -= n[k];
      flat -= static_cast<std::size_t>(n[k]) * strides[k];
      n[k] = 0;
      if (k == 0) return levels;
    }
  }
}

// Hot kernel state: everything resolved to flat offsets so no per-cell
// allocations happen besides the unavoidable bignum work.
struct FillPlan {
  struct Term {
    std::vector<unsigned> shift;
    std::size_t flat_shift;
    Rational coeff;
  };
  std::vector<Term> support;
  std::vector<std::pair<std::size_t, Rational>> numerator;  // sorted by flat index
  std::vector<std::size_t> strides;
  std::vector<unsigned> dims;  // bounds_i + 1
  Rational j0;
  bool j0_is_one = false;
};

FillPlan make_plan(const Polynomial& I, const Polynomial& J,
                   std::span<const unsigned> bounds) {
  FillPlan plan;
  plan.j0 = J.constant_term();
  plan.j0_is_one = plan.j0 == 1;
  plan.strides.assign(bounds.size(), 1);
  plan.dims.assign(bounds.size(), 0);
  for (std::size_t i = bounds.size(); i-- > 1;)
    plan.strides[i - 1] = plan.strides[i] * (static_cast<std::size_t>(bounds[i]) + 1);
  for (std::size_t i = 0; i < bounds.size(); ++i) plan.dims[i] = bounds[i] + 1;

  for (const auto& [e, c] : J.terms()) {
    if (std::all_of(e.begin(), e.end(), [](unsigned v) { return v == 0; })) continue;
    FillPlan::Term t{std::vector<unsigned>(e.begin(), e.end()), 0, c};
    for (std::size_t i = 0; i < e.size(); ++i)
      t.flat_shift += static_cast<std::size_t>(e[i]) * plan.strides[i];
    plan.support.push_back(std::move(t));
  }
  for (const auto& [e, c] : I.terms()) {
    bool inside = true;
    std::size_t flat = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > bounds[i]) inside = false;
      flat += static_cast<std::size_t>(e[i]) * plan.strides[i];
    }
    if (inside) plan.numerator.emplace_back(flat, c);
  }
  std::sort(plan.numerator.begin(), plan.numerator.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return plan;
}

// Scratch rationals reused across cells; mpq_swap into the table keeps the
// kernel free of per-cell allocations, which is what lets the level-parallel
// schedule scale (GMP values are heap-backed).
struct FillScratch {
  Rational acc;
  Rational tmp;
};

void fill_cell(std::size_t flat, const FillPlan& plan, std::vector<Rational>& values,
               FillScratch& scratch) {
  mpq_ptr acc = scratch.acc.backend().data();
  const auto it = std::lower_bound(
      plan.numerator.begin(), plan.numerator.end(), flat,
      [](const auto& entry, std::size_t key) { return entry.first < key; });
  if (it != plan.numerator.end() && it->first == flat)
    mpq_set(acc, it->second.backend().data());
  else
    mpq_set_ui(acc, 0, 1);

  const std::size_t d = plan.strides.size();
  for (const auto& term : plan.support) {
    bool in_range = true;
    for (std::size_t i = 0; i < d; ++i) {
      const unsigned ni =
          static_cast<unsigned>((flat / plan.strides[i]) % plan.dims[i]);
      if (ni < term.shift[i]) {
        in_range = false;
        break;
      }
    }
    if (!in_range) continue;  // f vanishes outside the nonnegative orthant
    mpq_mul(scratch.tmp.backend().data(), term.coeff.backend().data(),
            values[flat - term.flat_shift].backend().data());
    mpq_sub(acc, acc, scratch.tmp.backend().data());
  }
  if (!plan.j0_is_one) mpq_div(acc, acc, plan.j0.backend().data());
  mpq_swap(values[flat].backend().data(), acc);
}

}  // namespace

CoefficientTable compute_coefficient_table(const Polynomial& I, const Polynomial& J,
                                           std::span<const unsigned> bounds,
                                           FillSchedule schedule) {
  if (I.vars() != J.vars()) throw Error("numerator and denominator variables differ");
  if (bounds.size() != J.dimension()) throw Error("bounds dimension mismatch");
  if (J.constant_term() == 0) throw Error("series undefined at origin: J(0) = 0");

  CoefficientTable table(std::vector<unsigned>(bounds.begin(), bounds.end()));
  const FillPlan plan = make_plan(I, J, bounds);
  const auto levels = level_cells(bounds);
  auto& values = table.values();

  if (schedule == FillSchedule::Parallel) {
#pragma omp parallel
    {
      FillScratch scratch;
      for (const auto& level : levels) {
#pragma omp for schedule(static)
        for (long k = 0; k < static_cast<long>(level.size()); ++k)
          fill_cell(level[static_cast<std::size_t>(k)], plan, values, scratch);
        // implicit barrier: the next level reads only finished cells
      }
    }
  } else {
    FillScratch scratch;
    for (const auto& level : levels)
      for (const std::size_t flat : level) fill_cell(flat, plan, values, scratch);
  }
  return table;
}

namespace {

// Lexicographic odometer over the box; returns false after the last cell.
bool advance_odometer(std::vector<unsigned>& n, std::span<const unsigned> bounds) {
  std::size_t k = bounds.size();
  while (k-- > 0) {
    if (n[k] < bounds[k]) {
      ++n[k];
      std::fill(n.begin() + static_cast<long>(k) + 1, n.end(), 0u);
      return true;
    }
    if (k == 0) return false;
  }
  return false;
}

}  // namespace

bool verify_recurrence(const CoefficientTable& table, const Polynomial& I,
                       const Polynomial& J) {
  std::vector<unsigned> n(table.dimension(), 0);
  std::vector<unsigned> prev(table.dimension());
  do {
    Rational acc = 0;
    for (const auto& [e, c] : J.terms()) {
      bool in_range = true;
      for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] < e[i]) {
          in_range = false;
          break;
        }
        prev[i] = n[i] - e[i];
      }
      if (!in_range) continue;
      acc += c * table.at(prev);
    }
    if (acc != I.coefficient(n)) return false;
  } while (advance_odometer(n, table.bounds()));
  return true;
}

DiagonalSequence diagonal_sequence(const CoefficientTable& table, const Direction& a,
                                   long long N) {
  if (a.dimension() != table.dimension()) throw Error("direction dimension mismatch");
  if (N < 0) throw Error("diagonal length must be nonnegative");
  for (std::size_t i = 0; i < a.dimension(); ++i)
    if (a.a[i] * N > static_cast<long long>(table.bounds()[i]))
      throw Error("diagonal endpoint exceeds the table bounds");

  DiagonalSequence seq{a, {}};
  seq.values.reserve(static_cast<std::size_t>(N) + 1);
  std::vector<unsigned> idx(a.dimension());
  for (long long n = 0; n <= N; ++n) {
    for (std::size_t i = 0; i < a.dimension(); ++i)
      idx[i] = static_cast<unsigned>(a.a[i] * n);
    seq.values.push_back(table.at(idx));
  }
  return seq;
}

void write_table_csv(std::ostream& out, const CoefficientTable& table) {
  for (std::size_t i = 0; i < table.dimension(); ++i) out << "n" << (i + 1) << ",";
  out << "numerator,denominator\n";
  std::vector<std::vector<std::size_t>> buckets = level_cells(table.bounds());
  std::vector<unsigned> n(table.dimension());
  for (const auto& level : buckets) {
    for (const std::size_t flat : level) {
      std::size_t rest = flat;
      for (std::size_t i = 0; i < table.dimension(); ++i) {
        n[i] = static_cast<unsigned>(rest / table.stride(i));
        rest %= table.stride(i);
        out << n[i] << ",";
      }
      const Rational& q = table.values()[flat];
      out << numerator(q).str() << "," << denominator(q).str() << "\n";
    }
  }
}

std::vector<RatioEntry> ratio_table(const DiagonalSequence& seq,
                                    const AsymptoticResult& asym) {
  if (!(seq.direction == asym.direction))
    throw Error("ratio table: directions of the sequence and the asymptotics differ");
  std::vector<RatioEntry> out;
  for (std::size_t n = 1; n < seq.values.size(); ++n) {
    const BigFloat term = evaluate_leading_term(asym, static_cast<long long>(n));
    if (term == 0)
      throw Error("leading term vanished; upstream asymptotics are unusable");
    const BigFloat ratio = BigFloat(seq.values[n]) / term;
    out.push_back({static_cast<long long>(n), ratio.convert_to<double>()});
  }
  return out;
}

}  // namespace diagasym
