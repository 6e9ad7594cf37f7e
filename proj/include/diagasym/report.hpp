#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "diagasym/asymptotics.hpp"
#include "diagasym/critical.hpp"
#include "diagasym/series_oracle.hpp"

namespace diagasym {

struct Tolerances {
  double residual = 1e-10;   // positive-solver acceptance residual
  double torus = 1e-8;       // relative modulus match
  double positivity = 1e-9;  // |imag| bound for positive-real points
};

struct JobConfig {
  std::string numerator;
  std::string denominator;
  std::vector<std::string> vars;
  std::vector<long long> direction;
  long long oracle_n = 40;
  std::set<std::string> emit = {"json"};
  Tolerances tolerances;
  // Extra Newton seeds supplied on the command line; not part of the config
  // document.
  std::vector<std::vector<double>> extra_seeds;
  bool dump_table = false;
};

// Parses and validates a JSON config document. Violations carry the field
// path ("direction[1]", "vars", ...). The oracle box prod_i (a_i N + 1) is
// capped at 10^7 cells.
JobConfig parse_config(const std::string& text);
JobConfig load_config(const std::filesystem::path& path);

enum class Verdict { Pass, Inconclusive, Fail };
std::string verdict_name(Verdict v);

// PASS: |ratio - 1| strictly decreasing over the last three doublings,
// below 0.05 at the largest n, and at most 0.6x per doubling at the last
// pair. FAIL: off by more than 20% at the largest n and still growing.
// Otherwise INCONCLUSIVE. Throws when fewer than 4 entries are given.
Verdict convergence_verdict(std::span<const RatioEntry> ratios);

struct Report {
  JobConfig config;
  std::string numerator_canonical;
  std::string denominator_canonical;
  std::string enumeration_kind;  // "bivariate_complete" or "positive_only"
  std::vector<CriticalPoint> critical_points;
  std::optional<ContribResult> contributing;
  std::optional<AsymptoticResult> asymptotics;
  std::optional<DiagonalSequence> diagonal;
  std::optional<CoefficientTable> table;  // kept only for --dump-table
  std::vector<RatioEntry> ratios;
  std::vector<BigFloat> leading_terms;  // aligned with ratios
  std::optional<Verdict> verdict;
  std::vector<std::string> warnings;
};

// Runs parse -> solve -> classify -> asymptotics -> oracle validation.
// Hypothesis failures degrade the report (named warnings, sections omitted)
// instead of aborting; only I/O and parse/config errors propagate.
Report run_analysis(const JobConfig& cfg);

// Deterministic renderings: identical configs yield byte-identical output
// (fixed key order, floats at 17 significant digits, LF line endings).
std::string report_json(const Report& r);
std::string report_markdown(const Report& r);
std::string report_csv(const Report& r);

// Writes report.json / report.md / report.csv (per `formats`) into out_dir,
// plus oracle_table.csv when the config asks for a table dump.
void emit_report(const Report& r, const std::set<std::string>& formats,
                 const std::filesystem::path& out_dir);

}  // namespace diagasym
