#include "diagasym/report.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace diagasym {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& path, const std::string& why) {
  throw ConfigError(path, why);
}

}  // namespace

JobConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError("<document>", e.what());
  }
  if (!doc.is_object()) bad_field("<document>", "expected a JSON object");

  static const std::set<std::string> known = {"numerator",  "denominator", "vars",
                                              "direction",  "oracle_n",    "emit",
                                              "tolerances"};
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) bad_field(key, "unknown field");

  JobConfig cfg;
  if (!doc.contains("numerator") || !doc["numerator"].is_string())
    bad_field("numerator", "required string");
  cfg.numerator = doc["numerator"].get<std::string>();
  if (!doc.contains("denominator") || !doc["denominator"].is_string())
    bad_field("denominator", "required string");
  cfg.denominator = doc["denominator"].get<std::string>();

  if (!doc.contains("vars") || !doc["vars"].is_array())
    bad_field("vars", "required array of variable names");
  for (std::size_t i = 0; i < doc["vars"].size(); ++i) {
    if (!doc["vars"][i].is_string())
      bad_field("vars[" + std::to_string(i) + "]", "expected a string");
    cfg.vars.push_back(doc["vars"][i].get<std::string>());
  }
  if (cfg.vars.size() < 2) bad_field("vars", "at least two variables are required");
  for (std::size_t i = 0; i < cfg.vars.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.vars.size(); ++j)
      if (cfg.vars[i] == cfg.vars[j]) bad_field("vars", "duplicate variable name");

  if (!doc.contains("direction") || !doc["direction"].is_array())
    bad_field("direction", "required array of positive integers");
  for (std::size_t i = 0; i < doc["direction"].size(); ++i) {
    const auto& v = doc["direction"][i];
    if (!v.is_number_integer())
      bad_field("direction[" + std::to_string(i) + "]", "expected an integer");
    const long long val = v.get<long long>();
    if (val < 1)
      bad_field("direction[" + std::to_string(i) + "]",
                "direction entries must be positive");
    cfg.direction.push_back(val);
  }
  if (cfg.direction.size() != cfg.vars.size())
    bad_field("direction", "length must match vars");

  if (doc.contains("oracle_n")) {
    if (!doc["oracle_n"].is_number_integer())
      bad_field("oracle_n", "expected an integer");
    cfg.oracle_n = doc["oracle_n"].get<long long>();
    if (cfg.oracle_n < 1) bad_field("oracle_n", "must be at least 1");
  }
  // Box-size cap: prod (a_i N + 1) <= 10^7 cells.
  {
    double cells = 1.0;
    for (long long ai : cfg.direction)
      cells *= static_cast<double>(ai) * static_cast<double>(cfg.oracle_n) + 1.0;
    if (cells > 1e7) bad_field("oracle_n", "oracle box exceeds 10^7 cells");
  }

  if (doc.contains("emit")) {
    if (!doc["emit"].is_array()) bad_field("emit", "expected an array");
    cfg.emit.clear();
    for (std::size_t i = 0; i < doc["emit"].size(); ++i) {
      if (!doc["emit"][i].is_string())
        bad_field("emit[" + std::to_string(i) + "]", "expected a string");
      const std::string fmt = doc["emit"][i].get<std::string>();
      if (fmt != "json" && fmt != "markdown" && fmt != "csv")
        bad_field("emit[" + std::to_string(i) + "]",
                  "must be one of json, markdown, csv");
      cfg.emit.insert(fmt);
    }
    if (cfg.emit.empty()) bad_field("emit", "must not be empty");
  }

  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    if (!t.is_object()) bad_field("tolerances", "expected an object");
    for (const auto& [key, value] : t.items()) {
      if (!value.is_number()) bad_field("tolerances." + key, "expected a number");
      const double v = value.get<double>();
      if (!(v > 0)) bad_field("tolerances." + key, "must be positive");
      if (key == "residual")
        cfg.tolerances.residual = v;
      else if (key == "torus")
        cfg.tolerances.torus = v;
      else if (key == "positivity")
        cfg.tolerances.positivity = v;
      else
        bad_field("tolerances." + key, "unknown tolerance");
    }
  }
  return cfg;
}

JobConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read config file: " + path.string());
  return parse_config(buf.str());
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

Verdict convergence_verdict(std::span<const RatioEntry> ratios) {
  if (ratios.size() < 4) throw Error("too few entries for a convergence verdict");
  std::map<long long, double> eps;
  for (const auto& r : ratios) eps[r.n] = std::abs(r.ratio - 1.0);

  const long long n_max = ratios.back().n;
  const double e_max = eps.at(n_max);

  // Doubling chain n/8 -> n/4 -> n/2 -> n (floors; the oracle produces dense
  // tables so these are present in practice).
  const long long h1 = n_max / 2, h2 = n_max / 4, h3 = n_max / 8;
  const bool chain = h3 >= 1 && eps.count(h1) && eps.count(h2) && eps.count(h3);
  if (chain) {
    const bool decreasing =
        eps.at(h3) > eps.at(h2) && eps.at(h2) > eps.at(h1) && eps.at(h1) > e_max;
    const bool halving = e_max <= 0.6 * eps.at(h1);
    if (decreasing && halving && e_max < 0.05) return Verdict::Pass;
  }

  if (e_max > 0.20 && ratios.size() >= 3) {
    const double e1 = std::abs(ratios[ratios.size() - 3].ratio - 1.0);
    const double e2 = std::abs(ratios[ratios.size() - 2].ratio - 1.0);
    if (e1 <= e2 && e2 <= e_max) return Verdict::Fail;
  }
  return Verdict::Inconclusive;
}

namespace {

SolverTolerances solver_tolerances(const JobConfig& cfg) {
  SolverTolerances t;
  t.newton_residual = cfg.tolerances.residual;
  t.torus_rel = cfg.tolerances.torus;
  t.positivity = cfg.tolerances.positivity;
  return t;
}

}  // namespace

Report run_analysis(const JobConfig& cfg) {
  Report r;
  r.config = cfg;

  const Polynomial I = parse_polynomial(cfg.numerator, cfg.vars);
  const Polynomial J = parse_polynomial(cfg.denominator, cfg.vars);
  r.numerator_canonical = I.str();
  r.denominator_canonical = J.str();
  const Direction a(cfg.direction);
  const SolverTolerances stol = solver_tolerances(cfg);

  // Critical points: complete enumeration for d = 2, the positive point
  // otherwise.
  bool points_complete = false;
  r.enumeration_kind = "positive_only";
  if (J.dimension() == 2) {
    try {
      r.critical_points = solve_bivariate_complete(J, a, stol);
      points_complete = true;
      r.enumeration_kind = "bivariate_complete";
    } catch (const Error& e) {
      r.warnings.push_back(std::string("critical-point enumeration failed: ") +
                           e.what());
    }
  }

  const auto positive_it =
      std::find_if(r.critical_points.begin(), r.critical_points.end(),
                   [](const CriticalPoint& p) { return p.is_positive_real; });
  if (positive_it == r.critical_points.end()) {
    try {
      CriticalPoint positive =
          (J.is_symmetric() && a.all_equal())
              ? solve_symmetric_positive(J, a, stol)
              : solve_positive_newton(J, a, cfg.extra_seeds, stol);
      r.critical_points.push_back(std::move(positive));
    } catch (const Error& e) {
      r.warnings.push_back(
          std::string("positive critical point not found: unique-positive-point "
                      "hypothesis unverified: ") +
          e.what());
    }
  }

  if (std::any_of(r.critical_points.begin(), r.critical_points.end(),
                  [](const CriticalPoint& p) { return p.is_positive_real; })) {
    try {
      r.contributing =
          classify_contributing(J, a, r.critical_points, points_complete, stol);
    } catch (const Error& e) {
      r.warnings.push_back(std::string("contributing-point classification failed: ") +
                           e.what());
    }
  }

  if (r.contributing && !r.contributing->contrib_certain) {
    r.warnings.push_back(
        "contributing-point set not certified: the denominator is not of the "
        "aperiodic nonnegative form 1 - P and the enumeration cannot exclude "
        "torus companions; candidates are reported without a completeness claim");
  }

  if (r.contributing) {
    try {
      r.asymptotics = assemble_asymptotics(I, J, a, *r.contributing,
                                           /*allow_uncertain=*/true);
      if (r.asymptotics->hessian.cross_check_rel_error > 1e-9)
        r.warnings.push_back(
            "symmetric Hessian shortcut disagrees with the general matrix beyond "
            "1e-9 relative");
    } catch (const HypothesisError& e) {
      r.warnings.push_back("asymptotics skipped [" + e.hypothesis + "]: " + e.what());
    } catch (const Error& e) {
      r.warnings.push_back(std::string("asymptotics skipped: ") + e.what());
    }
  }

  if (J.constant_term() == 0) {
    r.warnings.push_back(
        "series undefined at origin (J(0) = 0): oracle section skipped");
    return r;
  }

  std::vector<unsigned> bounds(a.dimension());
  for (std::size_t i = 0; i < a.dimension(); ++i)
    bounds[i] = static_cast<unsigned>(a.a[i] * cfg.oracle_n);
  CoefficientTable table = compute_coefficient_table(I, J, bounds);
  r.diagonal = diagonal_sequence(table, a, cfg.oracle_n);
  if (cfg.dump_table) r.table = table;

  if (r.asymptotics) {
    r.ratios = ratio_table(*r.diagonal, *r.asymptotics);
    r.leading_terms.reserve(r.ratios.size());
    for (const auto& entry : r.ratios)
      r.leading_terms.push_back(evaluate_leading_term(*r.asymptotics, entry.n));
    if (r.ratios.size() >= 4) {
      r.verdict = convergence_verdict(r.ratios);
    } else {
      r.verdict = Verdict::Inconclusive;
      r.warnings.push_back("too few oracle entries for a convergence verdict");
    }
  } else {
    r.verdict = Verdict::Inconclusive;
    r.warnings.push_back(
        "oracle comparison skipped: no asymptotic prediction available");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Emission. All three renderings are deterministic: fixed key order, floats
// at 17 significant digits, LF line endings.

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string jstr(const std::string& s) { return "\"" + json_escape(s) + "\""; }

std::string jcomplex(const Complex& z) {
  return "[" + format_double(z.real()) + ", " + format_double(z.imag()) + "]";
}

std::string jpoint(std::span<const Complex> z) {
  std::string out = "[";
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i) out += ", ";
    out += jcomplex(z[i]);
  }
  return out + "]";
}

std::string big_float_string(const BigFloat& v) {
  const double d = v.convert_to<double>();
  if (std::isfinite(d) && std::abs(d) < 1e300) return format_double(d);
  return v.str(17, std::ios_base::scientific);
}

std::string rational_exponent_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace

std::string report_json(const Report& r) {
  std::ostringstream o;
  o << "{\n";
  // input
  o << "  \"input\": {\n";
  o << "    \"numerator\": " << jstr(r.numerator_canonical) << ",\n";
  o << "    \"denominator\": " << jstr(r.denominator_canonical) << ",\n";
  o << "    \"vars\": [";
  for (std::size_t i = 0; i < r.config.vars.size(); ++i)
    o << (i ? ", " : "") << jstr(r.config.vars[i]);
  o << "],\n";
  o << "    \"direction\": [";
  for (std::size_t i = 0; i < r.config.direction.size(); ++i)
    o << (i ? ", " : "") << r.config.direction[i];
  o << "],\n";
  o << "    \"oracle_n\": " << r.config.oracle_n << ",\n";
  o << "    \"tolerances\": {\"residual\": " << format_double(r.config.tolerances.residual)
    << ", \"torus\": " << format_double(r.config.tolerances.torus)
    << ", \"positivity\": " << format_double(r.config.tolerances.positivity) << "}\n";
  o << "  },\n";

  // critical_points
  o << "  \"critical_points\": {\n";
  o << "    \"enumeration\": " << jstr(r.enumeration_kind) << ",\n";
  o << "    \"residual_tol\": " << format_double(r.config.tolerances.residual) << ",\n";
  o << "    \"points\": [";
  for (std::size_t i = 0; i < r.critical_points.size(); ++i) {
    const auto& p = r.critical_points[i];
    o << (i ? "," : "") << "\n      {\"point\": " << jpoint(p.point)
      << ", \"residual\": " << format_double(p.residual)
      << ", \"is_positive_real\": " << (p.is_positive_real ? "true" : "false")
      << ", \"is_smooth\": " << (p.is_smooth ? "true" : "false")
      << ", \"is_simple_in_last\": " << (p.is_simple_in_last ? "true" : "false")
      << ", \"torus_moduli\": [";
    for (std::size_t k = 0; k < p.torus_moduli.size(); ++k)
      o << (k ? ", " : "") << format_double(p.torus_moduli[k]);
    o << "]}";
  }
  o << (r.critical_points.empty() ? "]\n" : "\n    ]\n");
  o << "  },\n";

  // contributing
  if (r.contributing) {
    const auto& c = *r.contributing;
    o << "  \"contributing\": {\n";
    o << "    \"torus_tol\": " << format_double(r.config.tolerances.torus) << ",\n";
    o << "    \"positive_point\": " << jpoint(c.positive_point.point) << ",\n";
    o << "    \"companions_on_torus\": [";
    for (std::size_t i = 0; i < c.companions_on_torus.size(); ++i)
      o << (i ? ", " : "") << jpoint(c.companions_on_torus[i].point);
    o << "],\n";
    o << "    \"aperiodic_case\": " << (c.aperiodic_case ? "true" : "false") << ",\n";
    o << "    \"diagonal_degenerate\": " << (c.diagonal_degenerate ? "true" : "false")
      << ",\n";
    o << "    \"contrib_certain\": " << (c.contrib_certain ? "true" : "false") << "\n";
    o << "  },\n";
  } else {
    o << "  \"contributing\": null,\n";
  }

  // hessian + asymptotics
  if (r.asymptotics) {
    const auto& h = r.asymptotics->hessian;
    o << "  \"hessian\": {\n";
    o << "    \"matrix\": [";
    for (std::size_t i = 0; i < h.matrix.size(); ++i) {
      o << (i ? ", " : "") << "[";
      for (std::size_t j = 0; j < h.matrix[i].size(); ++j)
        o << (j ? ", " : "") << jcomplex(h.matrix[i][j]);
      o << "]";
    }
    o << "],\n";
    o << "    \"determinant\": " << jcomplex(h.determinant) << ",\n";
    o << "    \"symmetric_shortcut_used\": "
      << (h.symmetric_shortcut_used ? "true" : "false") << ",\n";
    if (h.cross_check_rel_error >= 0)
      o << "    \"cross_check_rel_error\": " << format_double(h.cross_check_rel_error)
        << ",\n";
    else
      o << "    \"cross_check_rel_error\": null,\n";
    o << "    \"cross_check_tol\": 1e-09\n";
    o << "  },\n";

    const auto& s = *r.asymptotics;
    o << "  \"asymptotics\": {\n";
    o << "    \"b0\": " << jcomplex(s.b0) << ",\n";
    o << "    \"exponent\": " << jstr(rational_exponent_string(s.exponent)) << ",\n";
    o << "    \"growth_per_step\": " << format_double(s.growth_per_step) << ",\n";
    o << "    \"last_coordinate_weight\": " << s.last_coordinate_weight << ",\n";
    o << "    \"error_order\": " << jstr(s.error_order) << ",\n";
    o << "    \"formula\": " << jstr("c^{-n·a} · b0 · (a_d n)^{(1-d)/2}") << "\n";
    o << "  },\n";
  } else {
    o << "  \"hessian\": null,\n";
    o << "  \"asymptotics\": null,\n";
  }

  // oracle
  if (r.diagonal) {
    o << "  \"oracle\": {\n";
    o << "    \"n_max\": " << (static_cast<long long>(r.diagonal->values.size()) - 1)
      << ",\n";
    o << "    \"ratio_precision\": 1e-12,\n";
    o << "    \"ratios\": [";
    for (std::size_t i = 0; i < r.ratios.size(); ++i)
      o << (i ? ", " : "") << "[" << r.ratios[i].n << ", "
        << format_double(r.ratios[i].ratio) << "]";
    o << "]\n";
    o << "  },\n";
  } else {
    o << "  \"oracle\": null,\n";
  }

  o << "  \"verdict\": "
    << (r.verdict ? jstr(verdict_name(*r.verdict)) : jstr("INCONCLUSIVE")) << ",\n";
  o << "  \"warnings\": [";
  for (std::size_t i = 0; i < r.warnings.size(); ++i)
    o << (i ? ", " : "") << jstr(r.warnings[i]);
  o << "]\n";
  o << "}\n";
  return o.str();
}

std::string report_markdown(const Report& r) {
  std::ostringstream o;
  o << "# Diagonal asymptotics report\n\n";
  o << "## Input\n\n";
  o << "- F = (" << r.numerator_canonical << ") / (" << r.denominator_canonical << ")\n";
  o << "- variables:";
  for (const auto& v : r.config.vars) o << " " << v;
  o << "\n- direction: (";
  for (std::size_t i = 0; i < r.config.direction.size(); ++i)
    o << (i ? ", " : "") << r.config.direction[i];
  o << ")\n- oracle N: " << r.config.oracle_n << "\n\n";

  o << "## Critical points (" << r.enumeration_kind << ", residual tol "
    << format_double(r.config.tolerances.residual) << ")\n\n";
  if (r.critical_points.empty()) {
    o << "none found\n\n";
  } else {
    o << "| point | residual | positive | smooth | simple in last |\n";
    o << "|---|---|---|---|---|\n";
    for (const auto& p : r.critical_points) {
      o << "| (";
      for (std::size_t i = 0; i < p.point.size(); ++i) {
        if (i) o << ", ";
        o << format_double(p.point[i].real());
        if (p.point[i].imag() != 0.0) o << (p.point[i].imag() < 0 ? " - " : " + ")
                                        << format_double(std::abs(p.point[i].imag()))
                                        << "i";
      }
      o << ") | " << format_double(p.residual) << " | "
        << (p.is_positive_real ? "yes" : "no") << " | " << (p.is_smooth ? "yes" : "no")
        << " | " << (p.is_simple_in_last ? "yes" : "no") << " |\n";
    }
    o << "\n";
  }

  o << "## Contributing point\n\n";
  if (r.contributing) {
    const auto& c = *r.contributing;
    o << "- positive point: (";
    for (std::size_t i = 0; i < c.positive_point.point.size(); ++i)
      o << (i ? ", " : "") << format_double(c.positive_point.point[i].real());
    o << ")\n- torus companions (tol " << format_double(r.config.tolerances.torus)
      << "): " << c.companions_on_torus.size() << "\n";
    o << "- aperiodic nonnegative case: " << (c.aperiodic_case ? "yes" : "no") << "\n";
    o << "- certified: " << (c.contrib_certain ? "yes" : "no") << "\n\n";
  } else {
    o << "not classified\n\n";
  }

  o << "## Asymptotics\n\n";
  if (r.asymptotics) {
    const auto& s = *r.asymptotics;
    o << "Leading term: c^{-n·a} · b0 · (a_d n)^{(1-d)/2}\n\n";
    o << "- growth per step: " << format_double(s.growth_per_step) << "\n";
    o << "- b0: " << format_double(s.b0.real());
    if (s.b0.imag() != 0.0) o << " + " << format_double(s.b0.imag()) << "i";
    o << "\n- exponent of (a_d n): " << rational_exponent_string(s.exponent) << "\n";
    o << "- h(J, c): " << format_double(s.hessian.determinant.real());
    if (s.hessian.determinant.imag() != 0.0)
      o << " + " << format_double(s.hessian.determinant.imag()) << "i";
    o << (s.hessian.symmetric_shortcut_used ? " (symmetric shortcut)" : "") << "\n";
    o << "- relative error order: " << s.error_order << "\n\n";
  } else {
    o << "not available (see warnings)\n\n";
  }

  o << "## Oracle validation\n\n";
  if (!r.ratios.empty()) {
    o << "| n | ratio exact/predicted |\n|---|---|\n";
    const std::size_t from = r.ratios.size() > 8 ? r.ratios.size() - 8 : 0;
    for (std::size_t i = from; i < r.ratios.size(); ++i)
      o << "| " << r.ratios[i].n << " | " << format_double(r.ratios[i].ratio) << " |\n";
    o << "\n";
  } else {
    o << "no ratio table\n\n";
  }
  o << "Verdict: " << (r.verdict ? verdict_name(*r.verdict) : "INCONCLUSIVE") << "\n\n";

  o << "## Warnings\n\n";
  if (r.warnings.empty()) {
    o << "none\n";
  } else {
    for (const auto& w : r.warnings) o << "- " << w << "\n";
  }
  return o.str();
}

std::string report_csv(const Report& r) {
  std::ostringstream o;
  o << "n,f_exact,leading_term,ratio\n";
  if (r.diagonal) {
    for (std::size_t i = 0; i < r.ratios.size(); ++i) {
      const long long n = r.ratios[i].n;
      const Rational& f = r.diagonal->values[static_cast<std::size_t>(n)];
      o << n << "," << f.str() << "," << big_float_string(r.leading_terms[i]) << ","
        << format_double(r.ratios[i].ratio) << "\n";
    }
    if (r.ratios.empty()) {
      for (std::size_t n = 1; n < r.diagonal->values.size(); ++n)
        o << n << "," << r.diagonal->values[n].str() << ",,\n";
    }
  }
  return o.str();
}

void emit_report(const Report& r, const std::set<std::string>& formats,
                 const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string());

  const auto write_file = [&](const std::string& name, const std::string& body) {
    const auto path = out_dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << body;
    if (!out) throw IoError("write failed: " + path.string());
  };

  if (formats.count("json")) write_file("report.json", report_json(r));
  if (formats.count("markdown")) write_file("report.md", report_markdown(r));
  if (formats.count("csv")) write_file("report.csv", report_csv(r));
  if (r.table) {
    const auto path = out_dir / "oracle_table.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_table_csv(out, *r.table);
    if (!out) throw IoError("write failed: " + path.string());
  }
}

}  // namespace diagasym
