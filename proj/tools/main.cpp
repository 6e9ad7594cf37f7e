#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "diagasym/report.hpp"

namespace {

std::vector<double> parse_seed(const std::string& text) {
  std::vector<double> seed;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      seed.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw diagasym::ConfigError("--seed", "expected comma-separated numbers");
    }
  }
  if (seed.empty()) throw diagasym::ConfigError("--seed", "empty seed");
  return seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diagonal-coefficient asymptotics of rational generating functions"};
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand(
      "analyze", "run the full pipeline on a job config and emit reports");
  std::string config_path;
  analyze->add_option("config", config_path, "job config (JSON)")->required();
  std::vector<std::string> emit_args;
  analyze->add_option("--emit", emit_args,
                      "report formats: json, markdown, csv (comma-separable)");
  long long oracle_n = -1;
  analyze->add_option("--oracle-n", oracle_n, "override the oracle depth N");
  std::string out_dir = ".";
  analyze->add_option("--out", out_dir, "output directory (default: .)");
  std::vector<std::string> seed_args;
  analyze->add_option("--seed", seed_args,
                      "extra Newton seed as comma-separated positives (repeatable)");
  double tol_residual = -1;
  analyze->add_option("--tol-residual", tol_residual,
                      "override the solver acceptance residual");
  bool dump_table = false;
  analyze->add_flag("--dump-table", dump_table, "also write oracle_table.csv");
  bool quiet = false;
  analyze->add_flag("--quiet", quiet, "suppress the stdout summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    diagasym::JobConfig cfg = diagasym::load_config(config_path);
    if (oracle_n > 0) cfg.oracle_n = oracle_n;
    if (tol_residual > 0) cfg.tolerances.residual = tol_residual;
    if (!emit_args.empty()) {
      cfg.emit.clear();
      for (const auto& arg : emit_args) {
        std::stringstream ss(arg);
        std::string fmt;
        while (std::getline(ss, fmt, ',')) {
          if (fmt != "json" && fmt != "markdown" && fmt != "csv")
            throw diagasym::ConfigError("--emit", "unknown format '" + fmt + "'");
          cfg.emit.insert(fmt);
        }
      }
    }
    for (const auto& s : seed_args) {
      auto seed = parse_seed(s);
      if (seed.size() != cfg.vars.size())
        throw diagasym::ConfigError("--seed", "seed length must match vars");
      cfg.extra_seeds.push_back(std::move(seed));
    }
    cfg.dump_table = dump_table;
    // Re-check the box cap in case --oracle-n grew it.
    {
      double cells = 1.0;
      for (long long ai : cfg.direction)
        cells *= static_cast<double>(ai) * static_cast<double>(cfg.oracle_n) + 1.0;
      if (cells > 1e7)
        throw diagasym::ConfigError("--oracle-n", "oracle box exceeds 10^7 cells");
    }

    const diagasym::Report report = diagasym::run_analysis(cfg);
    diagasym::emit_report(report, cfg.emit, out_dir);

    if (!quiet) {
      std::cout << "direction (";
      for (std::size_t i = 0; i < cfg.direction.size(); ++i)
        std::cout << (i ? "," : "") << cfg.direction[i];
      std::cout << ")";
      if (report.asymptotics) {
        std::cout << "  growth/step " << report.asymptotics->growth_per_step
                  << "  b0 " << report.asymptotics->b0.real();
      }
      if (report.verdict)
        std::cout << "  verdict " << diagasym::verdict_name(*report.verdict);
      std::cout << "  warnings " << report.warnings.size() << "\n";
      for (const auto& w : report.warnings) std::cout << "  ! " << w << "\n";
    }
    return 0;
  } catch (const diagasym::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const diagasym::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const diagasym::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const diagasym::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
