#pragma once

// Run configuration, structured report, and their JSON / key = value forms.

#include "ljmayer/lsbound.hpp"
#include "ljmayer/oracle.hpp"
#include "ljmayer/quad.hpp"
#include "ljmayer/radius.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <ctime>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ljmayer {

inline constexpr const char* kToolVersion = "1.0.0";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double beta = 1.0;
  double a = 0.3637;
  double ell = 0.42;
  double stability_B = kStabilityLJ;
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  std::uint64_t seed = 0;
  int starts = 100;          // descent starts per cluster size
  int n_max = kMaxClusterSize;
  long mc_samples = 10'000'000;
  std::string json_path;
  std::string csv_path;

  QuadratureSpec quadrature() const {
    QuadratureSpec q;
    q.abs_tol = abs_tol;
    q.rel_tol = rel_tol;
    return q;
  }
};

/// Throws ConfigError on values no computation can use. Combinations that
/// are valid inputs but fail a check (e.g. a too large for ell) pass here.
inline void validate(const RunConfig& c) {
  if (!(c.beta > 0.0) || !std::isfinite(c.beta)) throw ConfigError("beta must be > 0");
  if (!(c.a > 0.0) || !(c.a < kLJZero)) throw ConfigError("a must lie in (0, 2^{-1/6})");
  if (!(c.ell > 0.0) || !std::isfinite(c.ell)) throw ConfigError("ell must be > 0");
  if (!(c.stability_B >= 0.0) || !std::isfinite(c.stability_B)) throw ConfigError("stability must be >= 0");
  if (!(c.abs_tol > 0.0) || !(c.rel_tol > 0.0)) throw ConfigError("tolerances must be > 0");
  if (c.starts < 1) throw ConfigError("starts must be >= 1");
  if (c.n_max < 2 || c.n_max > kMaxClusterSize) throw ConfigError("n_max must be in [2, 13]");
  if (c.mc_samples < 10'000) throw ConfigError("samples must be >= 10000");
}

namespace detail {
inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not a number: '" + v + "'");
  }
}
}  // namespace detail

/// Applies a line-oriented `key = value` config. Blank lines and lines
/// starting with '#' or ';' are ignored; unknown keys are errors.
inline void apply_config_text(RunConfig& c, std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(t.substr(0, eq));
    std::string val = detail::trim(t.substr(eq + 1));
    if (val.size() >= 2 && val.front() == '"' && val.back() == '"') val = val.substr(1, val.size() - 2);
    if (key == "beta") c.beta = detail::parse_number(key, val);
    else if (key == "a") c.a = detail::parse_number(key, val);
    else if (key == "ell") c.ell = detail::parse_number(key, val);
    else if (key == "stability") c.stability_B = detail::parse_number(key, val);
    else if (key == "abs_tol") c.abs_tol = detail::parse_number(key, val);
    else if (key == "rel_tol") c.rel_tol = detail::parse_number(key, val);
    else if (key == "seed") c.seed = static_cast<std::uint64_t>(detail::parse_number(key, val));
    else if (key == "starts") c.starts = static_cast<int>(detail::parse_number(key, val));
    else if (key == "n_max") c.n_max = static_cast<int>(detail::parse_number(key, val));
    else if (key == "samples") c.mc_samples = static_cast<long>(detail::parse_number(key, val));
    else if (key == "json") c.json_path = val;
    else if (key == "csv") c.csv_path = val;
    else throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
}

// ---------------------------------------------------------------------------
// Checks

enum class Provenance { Published, Derived };

/// One numeric check: computed value against an expected bound.
/// relation is one of "<", "<=", ">", ">=", "in" (open interval
/// (expected, expected_hi)), "~" (|computed - expected| <= tolerance * |expected|).
struct Check {
  std::string id;
  std::string name;
  std::string relation;
  double expected = 0.0;
  std::optional<double> expected_hi;
  double computed = 0.0;
  double tolerance = 0.0;
  Provenance provenance = Provenance::Derived;
  bool passed = false;
  std::string detail;
};

inline Check make_check(std::string id, std::string name, std::string relation, double expected, double computed,
                        Provenance prov, double tolerance = 0.0, std::optional<double> expected_hi = std::nullopt) {
  Check c{std::move(id), std::move(name), std::move(relation), expected, expected_hi, computed, tolerance, prov,
          false, {}};
  const double x = computed;
  if (c.relation == "<") c.passed = x < expected;
  else if (c.relation == "<=") c.passed = x <= expected;
  else if (c.relation == ">") c.passed = x > expected;
  else if (c.relation == ">=") c.passed = x >= expected;
  else if (c.relation == "in") c.passed = expected_hi && x > expected && x < *expected_hi;
  else if (c.relation == "~") c.passed = std::abs(x - expected) <= tolerance * std::abs(expected);
  else throw std::invalid_argument("unknown check relation " + c.relation);
  return c;
}

/// A boolean check (exact-arithmetic verdicts and similar).
inline Check make_flag(std::string id, std::string name, bool holds, Provenance prov, std::string detail = {}) {
  Check c{std::move(id), std::move(name), "true", 1.0, std::nullopt, holds ? 1.0 : 0.0, 0.0, prov, holds,
          std::move(detail)};
  return c;
}

struct OracleSummary {
  std::vector<StabilityRow> lj;
  std::vector<StabilityRow> cutoff;
  std::optional<MayerCoefficientEstimate> c2;
  std::optional<MayerCoefficientEstimate> c3;
};

struct Report {
  std::string tool = "ljmayer";
  std::string version = kToolVersion;
  std::string timestamp;
  RunConfig config;
  LSCertificate certificate;
  EquivalenceRecord equivalence;
  IntegralResult c;
  IntegralResult c_tilde;
  RadiusReport radii;
  OracleSummary oracle;
  std::vector<Check> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& k) { return k.passed; });
  }
};

inline std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ---------------------------------------------------------------------------
// JSON

using nlohmann::json;

inline void to_json(json& j, const RunConfig& c) {
  j = json{{"beta", c.beta},       {"a", c.a},           {"ell", c.ell},
           {"stability", c.stability_B}, {"abs_tol", c.abs_tol}, {"rel_tol", c.rel_tol},
           {"seed", c.seed},       {"starts", c.starts}, {"n_max", c.n_max},
           {"samples", c.mc_samples}};
}
inline void from_json(const json& j, RunConfig& c) {
  j.at("beta").get_to(c.beta);
  j.at("a").get_to(c.a);
  j.at("ell").get_to(c.ell);
  j.at("stability").get_to(c.stability_B);
  j.at("abs_tol").get_to(c.abs_tol);
  j.at("rel_tol").get_to(c.rel_tol);
  j.at("seed").get_to(c.seed);
  j.at("starts").get_to(c.starts);
  j.at("n_max").get_to(c.n_max);
  j.at("samples").get_to(c.mc_samples);
}

inline void to_json(json& j, const CheckItem& c) { j = json{{"name", c.name}, {"holds", c.holds}, {"detail", c.detail}}; }
inline void from_json(const json& j, CheckItem& c) {
  j.at("name").get_to(c.name);
  j.at("holds").get_to(c.holds);
  j.at("detail").get_to(c.detail);
}

inline void to_json(json& j, const LSCertificate& c) {
  j = json{{"a", c.a},
           {"ell", c.ell},
           {"margin_case1", c.margin_case1},
           {"margin_case2", c.margin_case2},
           {"wplus_bound", c.wplus_bound},
           {"plateau", c.plateau},
           {"rmin_lower", c.rmin_lower},
           {"rmin_bracket_hi", c.rmin_bracket_hi},
           {"valid", c.valid},
           {"failure_reason", c.failure_reason},
           {"checks", c.checks}};
}
inline void from_json(const json& j, LSCertificate& c) {
  j.at("a").get_to(c.a);
  j.at("ell").get_to(c.ell);
  j.at("margin_case1").get_to(c.margin_case1);
  j.at("margin_case2").get_to(c.margin_case2);
  j.at("wplus_bound").get_to(c.wplus_bound);
  j.at("plateau").get_to(c.plateau);
  j.at("rmin_lower").get_to(c.rmin_lower);
  j.at("rmin_bracket_hi").get_to(c.rmin_bracket_hi);
  j.at("valid").get_to(c.valid);
  j.at("failure_reason").get_to(c.failure_reason);
  j.at("checks").get_to(c.checks);
}

inline void to_json(json& j, const EquivalenceRecord& r) {
  j = json{{"full_lj_rmin_bound", r.full_lj_rmin_bound},
           {"cutoff_minimizers_are_lj_minimizers", r.cutoff_minimizers_are_lj_minimizers},
           {"lj_minimizers_are_cutoff_minimizers", r.lj_minimizers_are_cutoff_minimizers},
           {"certified", r.certified}};
}
inline void from_json(const json& j, EquivalenceRecord& r) {
  j.at("full_lj_rmin_bound").get_to(r.full_lj_rmin_bound);
  j.at("cutoff_minimizers_are_lj_minimizers").get_to(r.cutoff_minimizers_are_lj_minimizers);
  j.at("lj_minimizers_are_cutoff_minimizers").get_to(r.lj_minimizers_are_cutoff_minimizers);
  j.at("certified").get_to(r.certified);
}

inline void to_json(json& j, const IntegralResult& r) {
  j = json{{"value", r.value},
           {"error_estimate", r.error_estimate},
           {"subdivisions_used", r.subdivisions_used},
           {"converged", r.converged}};
}
inline void from_json(const json& j, IntegralResult& r) {
  j.at("value").get_to(r.value);
  j.at("error_estimate").get_to(r.error_estimate);
  j.at("subdivisions_used").get_to(r.subdivisions_used);
  j.at("converged").get_to(r.converged);
}

inline void to_json(json& j, const BoundInputs& b) {
  j = json{{"beta", b.beta}, {"B", b.B}, {"C", b.C}, {"C_tilde", b.C_tilde}, {"a", b.a}};
}
inline void from_json(const json& j, BoundInputs& b) {
  j.at("beta").get_to(b.beta);
  j.at("B").get_to(b.B);
  j.at("C").get_to(b.C);
  j.at("C_tilde").get_to(b.C_tilde);
  j.at("a").get_to(b.a);
}

inline void to_json(json& j, const CoefficientRow& r) { j = json{{"n", r.n}, {"pr", r.pr}, {"new", r.next}}; }
inline void from_json(const json& j, CoefficientRow& r) {
  j.at("n").get_to(r.n);
  j.at("pr").get_to(r.pr);
  j.at("new").get_to(r.next);
}

inline void to_json(json& j, const RadiusReport& r) {
  j = json{{"rho_pr", r.rho_pr},
           {"rho_new", r.rho_new},
           {"ratio_lower_bound", r.ratio_lower_bound},
           {"ratio_computed", r.ratio_computed},
           {"coefficient_bounds", r.coefficient_bounds},
           {"inputs", r.inputs}};
  j["certificate"] = r.certificate ? json(*r.certificate) : json(nullptr);
}
inline void from_json(const json& j, RadiusReport& r) {
  j.at("rho_pr").get_to(r.rho_pr);
  j.at("rho_new").get_to(r.rho_new);
  j.at("ratio_lower_bound").get_to(r.ratio_lower_bound);
  j.at("ratio_computed").get_to(r.ratio_computed);
  j.at("coefficient_bounds").get_to(r.coefficient_bounds);
  j.at("inputs").get_to(r.inputs);
  if (j.contains("certificate") && !j.at("certificate").is_null())
    r.certificate = j.at("certificate").get<LSCertificate>();
  else
    r.certificate.reset();
}

inline void to_json(json& j, const Configuration& c) {
  j = json{{"positions", c.positions},
           {"energy", c.energy},
           {"per_particle_w", c.per_particle_w},
           {"rmin_emp", c.rmin_emp},
           {"gradient_norm", c.gradient_norm}};
}
inline void from_json(const json& j, Configuration& c) {
  j.at("positions").get_to(c.positions);
  j.at("energy").get_to(c.energy);
  j.at("per_particle_w").get_to(c.per_particle_w);
  j.at("rmin_emp").get_to(c.rmin_emp);
  j.at("gradient_norm").get_to(c.gradient_norm);
}

inline void to_json(json& j, const StabilityRow& r) {
  j = json{{"n", r.n},
           {"energy", r.energy},
           {"stability_quotient", r.stability_quotient},
           {"rmin_emp", r.rmin_emp},
           {"gradient_norm", r.gradient_norm},
           {"negative_w", r.negative_w},
           {"wplus_max", r.wplus_max},
           {"va_at_rmin", r.va_at_rmin},
           {"wplus_witness", r.wplus_witness},
           {"config", r.config}};
}
inline void from_json(const json& j, StabilityRow& r) {
  j.at("n").get_to(r.n);
  j.at("energy").get_to(r.energy);
  j.at("stability_quotient").get_to(r.stability_quotient);
  j.at("rmin_emp").get_to(r.rmin_emp);
  j.at("gradient_norm").get_to(r.gradient_norm);
  j.at("negative_w").get_to(r.negative_w);
  j.at("wplus_max").get_to(r.wplus_max);
  j.at("va_at_rmin").get_to(r.va_at_rmin);
  j.at("wplus_witness").get_to(r.wplus_witness);
  j.at("config").get_to(r.config);
}

NLOHMANN_JSON_SERIALIZE_ENUM(EstimateMethod, {{EstimateMethod::ExactQuadrature, "exact-quadrature"},
                                              {EstimateMethod::MonteCarlo, "monte-carlo"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Provenance, {{Provenance::Published, "paper"}, {Provenance::Derived, "derived"}})

inline void to_json(json& j, const MayerCoefficientEstimate& e) {
  j = json{{"order", e.order},
           {"value", e.value},
           {"statistical_error", e.statistical_error},
           {"truncation_error", e.truncation_error},
           {"quadrature_error", e.quadrature_error},
           {"method", e.method},
           {"samples", e.samples}};
}
inline void from_json(const json& j, MayerCoefficientEstimate& e) {
  j.at("order").get_to(e.order);
  j.at("value").get_to(e.value);
  j.at("statistical_error").get_to(e.statistical_error);
  j.at("truncation_error").get_to(e.truncation_error);
  j.at("quadrature_error").get_to(e.quadrature_error);
  j.at("method").get_to(e.method);
  j.at("samples").get_to(e.samples);
}

inline void to_json(json& j, const Check& c) {
  j = json{{"id", c.id},
           {"name", c.name},
           {"relation", c.relation},
           {"expected", c.expected},
           {"computed", c.computed},
           {"tolerance", c.tolerance},
           {"provenance", c.provenance},
           {"passed", c.passed},
           {"detail", c.detail}};
  j["expected_hi"] = c.expected_hi ? json(*c.expected_hi) : json(nullptr);
}
inline void from_json(const json& j, Check& c) {
  j.at("id").get_to(c.id);
  j.at("name").get_to(c.name);
  j.at("relation").get_to(c.relation);
  j.at("expected").get_to(c.expected);
  j.at("computed").get_to(c.computed);
  j.at("tolerance").get_to(c.tolerance);
  j.at("provenance").get_to(c.provenance);
  j.at("passed").get_to(c.passed);
  j.at("detail").get_to(c.detail);
  if (!j.at("expected_hi").is_null()) c.expected_hi = j.at("expected_hi").get<double>();
}

template <class T>
json optional_json(const std::optional<T>& o) {
  return o ? json(*o) : json(nullptr);
}

inline void to_json(json& j, const Report& r) {
  j = json{{"tool", r.tool},
           {"version", r.version},
           {"timestamp", r.timestamp},
           {"config", r.config},
           {"certificate", r.certificate},
           {"equivalence", r.equivalence},
           {"integrals", {{"C", r.c}, {"C_tilde", r.c_tilde}}},
           {"radii", r.radii},
           {"oracle",
            {{"minima_lj", r.oracle.lj},
             {"minima_cutoff", r.oracle.cutoff},
             {"c2", optional_json(r.oracle.c2)},
             {"c3", optional_json(r.oracle.c3)}}},
           {"checks", r.checks},
           {"passed", r.all_passed()}};
}
inline void from_json(const json& j, Report& r) {
  j.at("tool").get_to(r.tool);
  j.at("version").get_to(r.version);
  j.at("timestamp").get_to(r.timestamp);
  j.at("config").get_to(r.config);
  j.at("certificate").get_to(r.certificate);
  j.at("equivalence").get_to(r.equivalence);
  r.equivalence.certificate = r.certificate;
  j.at("integrals").at("C").get_to(r.c);
  j.at("integrals").at("C_tilde").get_to(r.c_tilde);
  j.at("radii").get_to(r.radii);
  const auto& o = j.at("oracle");
  o.at("minima_lj").get_to(r.oracle.lj);
  o.at("minima_cutoff").get_to(r.oracle.cutoff);
  if (!o.at("c2").is_null()) r.oracle.c2 = o.at("c2").get<MayerCoefficientEstimate>();
  if (!o.at("c3").is_null()) r.oracle.c3 = o.at("c3").get<MayerCoefficientEstimate>();
  j.at("checks").get_to(r.checks);
}

}  // namespace ljmayer
