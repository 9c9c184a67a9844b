// ljmayer: convergence-radius bounds for the Lennard-Jones Mayer series.
//
//   ljmayer verify-paper [--json report.json]
//   ljmayer bounds [--beta 1] [--a 0.3637] [--stability 41.66]
//   ljmayer optimize [--a-min 0.30 --a-max 0.3637 --step 1e-3] [--csv sweep.csv]
//   ljmayer curve F|case1|case2|radius-vs-a --from X --to Y --step H
//   ljmayer oracle minimize --n 4 --starts 50 --seed 0
//   ljmayer oracle mayer --order 2|3 [--samples 1000000]
//
// Exit codes: 0 success, 1 a check failed, 2 usage/config/I-O error.

#include "ljmayer/ljmayer.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace ljmayer;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::optional<double> beta, a, ell, stability;
  std::optional<std::uint64_t> seed;
  std::string json_path, csv_path, config_path;
};

RunConfig resolve_config(const Flags& f) {
  RunConfig cfg;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw ConfigError("cannot open config file '" + f.config_path + "'");
    apply_config_text(cfg, in);
  }
  if (f.beta) cfg.beta = *f.beta;
  if (f.a) cfg.a = *f.a;
  if (f.ell) cfg.ell = *f.ell;
  if (f.stability) cfg.stability_B = *f.stability;
  if (f.seed) cfg.seed = *f.seed;
  if (!f.json_path.empty()) cfg.json_path = f.json_path;
  if (!f.csv_path.empty()) cfg.csv_path = f.csv_path;
  validate(cfg);
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

// CSV goes to the --csv path when given, to stdout otherwise.
void emit_csv(const RunConfig& cfg, const std::string& text) {
  if (cfg.csv_path.empty())
    std::cout << text;
  else
    write_text(cfg.csv_path, text);
}

std::string fmt(double x, int prec = 10) {
  std::ostringstream os;
  os << std::setprecision(prec) << x;
  return os.str();
}

void print_check(std::ostream& os, const Check& c) {
  os << (c.passed ? "  PASS " : "  FAIL ") << std::left << std::setw(6) << c.id << ' ' << c.name;
  if (c.relation != "true") {
    os << "  [computed " << fmt(c.computed) << ' ' << c.relation << ' ' << fmt(c.expected);
    if (c.expected_hi) os << ", " << fmt(*c.expected_hi);
    if (c.tolerance > 0) os << " tol " << c.tolerance;
    os << ']';
  }
  if (!c.detail.empty()) os << "  (" << c.detail << ')';
  os << '\n';
}

int cmd_verify_paper(const RunConfig& cfg) {
  const Report rep = run_reproduction_suite(cfg, [](const std::string& s) { std::cerr << "[verify] " << s << '\n'; });
  std::size_t failed = 0;
  for (const auto& c : rep.checks) {
    print_check(std::cout, c);
    if (!c.passed) ++failed;
  }
  std::cout << (failed ? "FAILED: " : "all checks passed: ") << (rep.checks.size() - failed) << '/'
            << rep.checks.size() << " passed\n";
  if (failed) {
    std::cout << "failing checks:\n";
    for (const auto& c : rep.checks)
      if (!c.passed) std::cout << "  " << c.id << ' ' << c.name << '\n';
  }
  if (!cfg.json_path.empty()) write_text(cfg.json_path, json(rep).dump(2) + "\n");
  return failed ? kExitCheckFailed : kExitOk;
}

int cmd_bounds(const RunConfig& cfg) {
  const QuadratureSpec q = cfg.quadrature();
  const IntegralResult c = c_beta(cfg.beta, PotentialSpec::lennard_jones(), q);
  const IntegralResult ct = tilde_c_beta(cfg.beta, cfg.a, q);
  const EquivalenceRecord eq = verify_stability_equivalence(cfg.a, cfg.ell);

  const BoundInputs conservative{cfg.beta, cfg.stability_B, kConservativeC, kConservativeTildeC, cfg.a};
  const BoundInputs computed{cfg.beta, cfg.stability_B, c.value, ct.value, cfg.a};
  RadiusReport rep = make_radius_report(conservative, conservative, c.value, ct.value);
  rep.certificate = eq.certificate;
  rep.rho_pr = pr_radius(computed);
  rep.rho_new = mps_radius(computed);
  rep.inputs = computed;

  std::cout << std::setprecision(10);
  std::cout << "beta = " << cfg.beta << ", B = " << cfg.stability_B << ", a = " << cfg.a << ", ell = " << cfg.ell
            << '\n';
  std::cout << "C(beta)  = " << c.value << "  (err " << c.error_estimate << ")\n";
  std::cout << "C~(beta) = " << ct.value << "  (err " << ct.error_estimate << ")\n";
  std::cout << "rho_PR   = " << rep.rho_pr << '\n';
  std::cout << "rho_new  = " << rep.rho_new << '\n';
  std::cout << "ratio (computed C, C~)       = " << rep.ratio_computed << "  = e^" << std::log(rep.ratio_computed)
            << '\n';
  std::cout << "ratio lower bound (7.89, 50000) = " << rep.ratio_lower_bound << "  = e^"
            << std::log(rep.ratio_lower_bound) << '\n';
  std::cout << "certificate: " << (eq.certified ? "valid" : "INVALID") << ", rmin_lower = " << eq.certificate.rmin_lower;
  if (!eq.certificate.failure_reason.empty()) std::cout << " (" << eq.certificate.failure_reason << ')';
  std::cout << "\n\n n   |C_n| bound (PR)      |C_n| bound (new)\n";
  for (const auto& row : rep.coefficient_bounds)
    std::cout << ' ' << row.n << "   " << std::setw(20) << row.pr << "  " << std::setw(20) << row.next << '\n';
  if (!cfg.json_path.empty()) write_text(cfg.json_path, json(rep).dump(2) + "\n");
  return kExitOk;
}

EllPolicy parse_policy(const std::string& s) {
  if (s == "tight") return EllPolicy::Tight;
  if (s == "fixed") return EllPolicy::Fixed;
  if (s == "minimize-f") return EllPolicy::MinimizeF;
  throw ConfigError("unknown ell policy '" + s + "' (tight|fixed|minimize-f)");
}

int cmd_optimize(const RunConfig& cfg, double a_min, double a_max, double step, const std::string& policy) {
  if (!(a_min > 0.0) || !(a_max < kLJZero) || !(a_min <= a_max))
    throw ConfigError("a range must satisfy 0 < a-min <= a-max < 2^{-1/6}");
  const auto grid = make_grid(a_min, a_max, step);
  const auto res = optimize_radius(cfg.beta, grid, parse_policy(policy), cfg.ell, cfg.stability_B);
  std::ostringstream csv;
  csv << std::setprecision(12) << "a,ell,C_tilde,rho_new,valid\n";
  for (const auto& r : res.rows) csv << r.a << ',' << r.ell << ',' << r.C_tilde << ',' << r.rho_new << ',' << (r.valid ? 1 : 0) << '\n';
  emit_csv(cfg, csv.str());
  std::ostream& info = cfg.csv_path.empty() ? std::cerr : std::cout;
  if (!res.best) {
    info << "no admissible candidate in the sweep\n";
    return kExitCheckFailed;
  }
  const auto& b = res.rows[*res.best];
  info << std::setprecision(10) << "best: a = " << b.a << ", ell = " << b.ell << ", C~ = " << b.C_tilde
       << ", rho_new = " << b.rho_new << ", rmin_lower = " << res.best_record->certificate.rmin_lower << '\n';
  return kExitOk;
}

int cmd_curve(const RunConfig& cfg, const std::string& what, double from, double to, double step) {
  if (!(step > 0.0) || !(to >= from)) throw ConfigError("curve needs step > 0 and to >= from");
  std::function<double(double)> f;
  if (what == "F") f = [](double x) { return F(x); };
  else if (what == "case1") f = [](double x) { return case1_bound(x); };
  else if (what == "case2") f = [](double x) { return case2_bound(x); };
  else if (what == "radius-vs-a")
    f = [&cfg](double a) {
      const EquivalenceRecord rec = verify_stability_equivalence(a, tight_ell(a));
      if (!rec.certified) throw std::domain_error(rec.certificate.failure_reason);
      return mps_radius({cfg.beta, cfg.stability_B, kConservativeC, tilde_c_beta(cfg.beta, a).value, a});
    };
  else throw ConfigError("unknown curve '" + what + "' (F|case1|case2|radius-vs-a)");
  std::ostringstream csv;
  csv << std::setprecision(12) << "x,y,flag\n";
  for (double x : make_grid(from, to, step)) {
    try {
      const double y = f(x);
      csv << x << ',' << y << ",ok\n";
    } catch (const std::exception& e) {
      std::string msg = e.what();
      for (auto& ch : msg)
        if (ch == ',' || ch == '\n') ch = ';';
      csv << x << ",," << "out-of-domain: " << msg << '\n';
    }
  }
  emit_csv(cfg, csv.str());
  return kExitOk;
}

int cmd_oracle_minimize(const RunConfig& cfg, int n, int starts, const std::string& potential,
                        const std::string& xyz_path) {
  if (n < 2 || n > kMaxClusterSize) throw ConfigError("--n must be in [2, 13] (desk-scale cap)");
  if (starts < 1) throw ConfigError("--starts must be >= 1");
  PotentialSpec spec;
  if (potential == "lj") spec = PotentialSpec::lennard_jones();
  else if (potential == "cutoff") spec = PotentialSpec::cutoff(cfg.a);
  else throw ConfigError("--potential must be lj or cutoff");
  const auto m = minimize_energy(n, spec, starts, cfg.seed);
  const auto& c = m.best;
  const bool negative_w = all_pass(check_negative_w(c));
  std::cout << std::setprecision(12) << "N = " << n << "  potential = " << to_string(spec.kind) << '\n'
            << "energy        = " << c.energy << '\n'
            << "-U/N          = " << -c.energy / n << '\n'
            << "rmin_emp      = " << c.rmin_emp << '\n'
            << "gradient norm = " << c.gradient_norm << (m.converged ? "" : "  (not converged)") << '\n'
            << "W(i) < 0 all  = " << (negative_w ? "yes" : "NO") << '\n'
            << "best start    = " << m.best_start << " of " << starts << '\n';
  if (!xyz_path.empty()) {
    std::ofstream out(xyz_path);
    if (!out) throw IoError("cannot open '" + xyz_path + "' for writing");
    write_xyz(out, c);
  }
  if (!cfg.json_path.empty()) write_text(cfg.json_path, json(c).dump(2) + "\n");
  return negative_w && m.converged ? kExitOk : kExitCheckFailed;
}

int cmd_oracle_mayer(const RunConfig& cfg, int order, long samples) {
  const auto lj = PotentialSpec::lennard_jones();
  const IntegralResult c = c_beta(cfg.beta, lj, cfg.quadrature());
  const IntegralResult ct = tilde_c_beta(cfg.beta, cfg.a, cfg.quadrature());
  const BoundInputs in{cfg.beta, cfg.stability_B, c.value, ct.value, cfg.a};
  MayerCoefficientEstimate e;
  if (order == 2) e = c2_exact(cfg.beta, lj, cfg.quadrature());
  else if (order == 3) e = c3_monte_carlo(cfg.beta, lj, samples, cfg.seed);
  else throw ConfigError("--order must be 2 or 3");
  const double pr = coefficient_bound(order, BoundVariant::PR, in);
  const double nw = coefficient_bound(order, BoundVariant::NEW, in);
  const double worst = std::abs(e.value) + 3.0 * e.statistical_error + e.truncation_error + e.quadrature_error;
  std::cout << std::setprecision(10) << "C_" << order << "(beta = " << cfg.beta << ") = " << e.value;
  if (e.method == EstimateMethod::MonteCarlo)
    std::cout << "  +- " << e.statistical_error << " (1 sigma, " << e.samples << " samples), truncation <= "
              << e.truncation_error;
  else
    std::cout << "  (quadrature err " << e.quadrature_error << ")";
  std::cout << "\nPR bound  = " << pr << (worst <= pr ? "  ok" : "  VIOLATED") << '\n'
            << "new bound = " << nw << (worst <= nw ? "  ok" : "  VIOLATED") << '\n';
  if (!cfg.json_path.empty()) write_text(cfg.json_path, json(e).dump(2) + "\n");
  return worst <= pr && worst <= nw ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convergence-radius bounds for the Mayer series of the Lennard-Jones gas"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("--beta", flags.beta, "inverse temperature (default 1)");
  app.add_option("--a", flags.a, "cut-off radius (default 0.3637)");
  app.add_option("--ell", flags.ell, "elementary cube side (default 0.42)");
  app.add_option("--stability", flags.stability, "stability constant B (default 41.66)");
  app.add_option("--seed", flags.seed, "random seed (default 0)");
  app.add_option("--json", flags.json_path, "write a JSON report to this path");
  app.add_option("--csv", flags.csv_path, "write CSV output to this path");
  app.add_option("--config", flags.config_path, "key = value config file");

  auto* verify = app.add_subcommand("verify-paper", "run the full reproduction suite");
  auto* bounds = app.add_subcommand("bounds", "radius bounds and coefficient table");

  auto* optimize = app.add_subcommand("optimize", "sweep the cut-off radius a");
  double a_min = 0.30, a_max = 0.3637, a_step = 1e-3;
  std::string policy = "tight";
  optimize->add_option("--a-min", a_min, "smallest a");
  optimize->add_option("--a-max", a_max, "largest a");
  optimize->add_option("--step", a_step, "grid step");
  optimize->add_option("--policy", policy, "ell policy: tight|fixed|minimize-f");

  auto* curve = app.add_subcommand("curve", "CSV plot data for F, case1, case2 or radius-vs-a");
  std::string what;
  double c_from = 0.30, c_to = 0.427, c_step = 1e-3;
  curve->add_option("what", what, "F|case1|case2|radius-vs-a")->required();
  curve->add_option("--from", c_from, "start of range");
  curve->add_option("--to", c_to, "end of range");
  curve->add_option("--step", c_step, "step");

  auto* oracle = app.add_subcommand("oracle", "brute-force oracles");
  oracle->require_subcommand(1);
  auto* ominimize = oracle->add_subcommand("minimize", "multistart cluster minimization");
  int n = 4, starts = 50;
  std::string potential = "lj", xyz;
  ominimize->add_option("--n", n, "cluster size (2..13)");
  ominimize->add_option("--starts", starts, "number of random starts");
  ominimize->add_option("--potential", potential, "lj|cutoff");
  ominimize->add_option("--xyz", xyz, "write the best configuration (x y z per line)");
  auto* omayer = oracle->add_subcommand("mayer", "low-order Mayer coefficients");
  int order = 2;
  long samples = 1'000'000;
  omayer->add_option("--order", order, "2 (quadrature) or 3 (Monte Carlo)");
  omayer->add_option("--samples", samples, "Monte-Carlo samples (>= 1e4)");
  oracle->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const RunConfig cfg = resolve_config(flags);
    if (*verify) return cmd_verify_paper(cfg);
    if (*bounds) return cmd_bounds(cfg);
    if (*optimize) return cmd_optimize(cfg, a_min, a_max, a_step, policy);
    if (*curve) return cmd_curve(cfg, what, c_from, c_to, c_step);
    if (*ominimize) return cmd_oracle_minimize(cfg, n, starts, potential, xyz);
    if (*omayer) {
      if (samples < 10'000) throw ConfigError("--samples must be >= 10000");
      return cmd_oracle_mayer(cfg, order, samples);
    }
  } catch (const ConfigError& e) {
    std::cerr << "ljmayer: config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "ljmayer: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "ljmayer: invalid input: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
