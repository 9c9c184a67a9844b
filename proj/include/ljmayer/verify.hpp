#pragma once

// The reproduction suite behind `ljmayer verify-paper`: every headline
// number of the construction is recomputed and compared against its
// published or independently derived value. Check ids AC-1 .. AC-12 group
// the individual checks by acceptance criterion.

#include "ljmayer/exact.hpp"
#include "ljmayer/lsbound.hpp"
#include "ljmayer/oracle.hpp"
#include "ljmayer/potentials.hpp"
#include "ljmayer/quad.hpp"
#include "ljmayer/radius.hpp"
#include "ljmayer/report.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace ljmayer {

using ProgressFn = std::function<void(const std::string&)>;

namespace detail {

inline double gradient_fd_relative_error(std::uint64_t seed, int n = 5, double h = 1e-5) {
  auto rng = derived_rng(seed, 0x9d);
  const auto x = random_start(n, rng);
  const auto spec = PotentialSpec::lennard_jones();
  const auto g = gradient(x, spec);
  double diff2 = 0.0, norm2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (int k = 0; k < 3; ++k) {
      auto xp = x, xm = x;
      xp[i][k] += h;
      xm[i][k] -= h;
      const double fd = (total_energy(xp, spec) - total_energy(xm, spec)) / (2.0 * h);
      diff2 += (fd - g[i][k]) * (fd - g[i][k]);
      norm2 += g[i][k] * g[i][k];
    }
  return std::sqrt(diff2 / norm2);
}

// Count of grid points where V_a <= V_LJ with equality exactly for r >= a fails.
inline long domination_violations(double a, long points = 100'000) {
  long bad = 0;
  for (long k = 0; k < points; ++k) {
    const double r = 1e-2 + (5.0 - 1e-2) * static_cast<double>(k) / static_cast<double>(points - 1);
    const double va = cutoff_eval(r, a), v = lj_eval(r);
    const bool ok = r >= a ? va == v : va < v;
    if (!ok) ++bad;
  }
  return bad;
}

}  // namespace detail

inline Report run_reproduction_suite(const RunConfig& cfg, const ProgressFn& progress = {}) {
  validate(cfg);
  auto note = [&](const std::string& s) {
    if (progress) progress(s);
  };
  using P = Provenance;
  Report rep;
  rep.timestamp = utc_timestamp();
  rep.config = cfg;
  auto& ck = rep.checks;

  // AC-1, AC-2: thresholds
  note("thresholds");
  {
    const auto e = exact::parse_decimal("0.4275");
    ck.push_back(make_flag("AC-1", "case-1 margin at ell = 4275/10000 is positive (exact)",
                           exact::sign(case1_margin(e)) > 0, P::Published));
    const Threshold& t1 = ell1();
    ck.push_back(make_check("AC-1", "l1 root", "in", 0.4275, t1.root, P::Published, 0.0, 0.45));
    ck.push_back(make_check("AC-1", "l1 bracket width", "<=", 1e-12, t1.hi - t1.lo, P::Derived));
    ck.push_back(make_flag("AC-1", "l1 bracket endpoints change sign (exact)", t1.exact_sign_change, P::Derived));

    const auto e2 = exact::parse_decimal("0.6268");
    ck.push_back(make_flag("AC-2", "case-2 margin at ell = 6268/10000 is >= 0 (exact)",
                           exact::sign(case2_margin(e2)) >= 0, P::Published));
    const Threshold& t2 = ell2();
    ck.push_back(make_check("AC-2", "l2 root", "in", 0.6268, t2.root, P::Published, 0.0, 0.66));
    ck.push_back(make_check("AC-2", "l2 bracket width", "<=", 1e-12, t2.hi - t2.lo, P::Derived));
    ck.push_back(make_flag("AC-2", "l2 bracket endpoints change sign (exact)", t2.exact_sign_change, P::Derived));
  }

  // AC-3 .. AC-5: bound minima and F
  note("bound minimization");
  {
    const MinResult m1 = minimize_bound(BoundFunction::Case1);
    ck.push_back(make_check("AC-3", "case-1 argmin", "in", 0.3672, m1.x, P::Published, 0.0, 0.3682));
    ck.push_back(make_check("AC-3", "case-1 minimum (<= 4712, within 1%)", "in", 4712.0 * 0.99, m1.value, P::Published,
                            0.0, 4712.0));
    const MinResult m2 = minimize_bound(BoundFunction::Case2);
    ck.push_back(make_check("AC-4", "case-2 argmin", "in", 0.5385, m2.x, P::Published, 0.0, 0.5395));
    ck.push_back(make_check("AC-4", "case-2 minimum (<= 3020, within 1%)", "in", 3020.0 * 0.99, m2.value, P::Published,
                            0.0, 3020.0));
    double fval = std::numeric_limits<double>::quiet_NaN();
    try {
      fval = F(cfg.ell);
    } catch (const std::domain_error&) {
    }
    Check c = make_check("AC-5", "F(ell) in (14000, 15545)", "in", 14000.0, std::isnan(fval) ? -1.0 : fval,
                         P::Published, 0.0, 15545.0);
    if (std::isnan(fval)) c.detail = "ell outside the domain of F";
    ck.push_back(c);
  }

  // AC-6: certificate
  note("certificate");
  rep.equivalence = verify_stability_equivalence(cfg.a, cfg.ell);
  rep.certificate = rep.equivalence.certificate;
  {
    const auto& c = rep.certificate;
    ck.push_back(make_flag("AC-6", "certificate valid", c.valid, P::Published, c.failure_reason));
    ck.push_back(make_check("AC-6", "rmin_lower >= 0.446", ">=", 0.446, c.rmin_lower, P::Published));
    ck.push_back(make_check("AC-6", "rmin_lower > a", ">", cfg.a, c.rmin_lower, P::Published));
    ck.push_back(make_check("AC-6", "bisection bracket width", "<=", 1e-10, c.rmin_bracket_hi - c.rmin_lower,
                            P::Derived));
    ck.push_back(make_flag("AC-6", "stability constants of V_a and V_LJ coincide", rep.equivalence.certified, P::Published));
  }

  // AC-7, AC-8: integrals
  note("integrals");
  const QuadratureSpec q = cfg.quadrature();
  {
    QuadratureSpec qt = q;
    qt.split_points = {1.0};
    const auto tail_q = integrate_radial(
        [](double r) { return 4.0 * std::numbers::pi * r * r * std::abs(lj_eval(r)); }, kLJZero,
        std::numeric_limits<double>::infinity(), qt);
    const double closed = attractive_tail_exact_value();
    ck.push_back(make_check("AC-7", "attractive tail: quadrature vs 16 sqrt(2) pi / 9", "~", closed, tail_q.value,
                            P::Derived, 1e-6));
    ck.push_back(make_check("AC-7", "attractive tail: antiderivative vs 16 sqrt(2) pi / 9", "~", closed,
                            attractive_tail_closed_form(), P::Derived, 1e-12));
    ck.push_back(make_check("AC-7", "attractive tail > 7.89", ">", 7.89, tail_q.value, P::Published));

    rep.c = c_beta(cfg.beta, PotentialSpec::lennard_jones(), q);
    rep.c_tilde = tilde_c_beta(cfg.beta, cfg.a, q);
    ck.push_back(make_flag("AC-7", "C(beta) quadrature converged", rep.c.converged, P::Derived));
    ck.push_back(make_check("AC-7", "C(beta) >= beta * attractive tail", ">=",
                            cfg.beta * closed, rep.c.value, P::Derived));

    const double over = tilde_c_overestimate(cfg.beta, cfg.a);
    QuadratureSpec qo = q;
    qo.split_points = mayer_split_points(PotentialSpec::cutoff(cfg.a));
    const auto over_q = integrate_radial(tilde_c_overestimate_integrand(cfg.beta, cfg.a), 0.0,
                                         std::numeric_limits<double>::infinity(), qo);
    ck.push_back(make_flag("AC-8", "C~ quadrature converged", rep.c_tilde.converged, P::Derived));
    ck.push_back(make_check("AC-8", "C~ <= closed-form overestimate", "<=", over, rep.c_tilde.value, P::Derived));
    ck.push_back(make_check("AC-8", "closed-form overestimate < 50000", "<", 50000.0, over, P::Published));
    ck.push_back(make_check("AC-8", "overestimate: quadrature vs closed form", "~", over, over_q.value, P::Derived,
                            1e-6));
  }

  // AC-9: radii and ratio
  note("radii");
  {
    const BoundInputs pr{cfg.beta, cfg.stability_B, kConservativeC, kConservativeTildeC, cfg.a};
    const BoundInputs nw = pr;
    rep.radii = make_radius_report(pr, nw, rep.c.value, rep.c_tilde.value);
    rep.radii.certificate = rep.certificate;
    const double ratio = rep.radii.ratio_lower_bound;
    const double log_ratio = std::log(ratio);
    ck.push_back(make_check("AC-9", "log ratio >= B - log 6338", ">=", cfg.beta * cfg.stability_B - std::log(6338.0),
                            log_ratio, P::Published));
    ck.push_back(make_check("AC-9", "log ratio >= 32.9", ">=", 32.9, log_ratio, P::Published));
    // exact: decimal forms of the stability constant
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, cfg.beta * cfg.stability_B, std::chars_format::fixed);
    const auto ex = exact_ratio_check(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)), "7.89",
                                      "50000", "6338", "32.9");
    ck.push_back(make_flag("AC-9", "7.89 * 6338 >= 50000 (exact)", ex.ratio_ge_exp_over_denom, P::Published));
    ck.push_back(make_flag("AC-9", "e^{B - 32.9} >= 6338 (exact Taylor lower bound)", ex.exp_over_denom_ge_target,
                           P::Published, "lower bound " + std::to_string(ex.exp_gap_lower)));
  }

  // AC-10: oracle minima
  note("cluster minima");
  {
    const auto lj = PotentialSpec::lennard_jones();
    const auto cut = PotentialSpec::cutoff(cfg.a);
    rep.oracle.lj = empirical_stability(cfg.n_max, lj, cfg.starts, cfg.seed, cut);
    rep.oracle.cutoff = empirical_stability(cfg.n_max, cut, cfg.starts, cfg.seed, cut);
    const double known[] = {-1.0, -3.0, -6.0};
    for (const auto& row : rep.oracle.lj) {
      const std::string n = std::to_string(row.n);
      if (row.n <= 4)
        ck.push_back(make_check("AC-10", "N = " + n + " minimum energy", "~", known[row.n - 2], row.energy,
                                P::Derived, 1e-6));
      ck.push_back(make_check("AC-10", "N = " + n + " gradient norm < 1e-8", "<", 1e-8, row.gradient_norm,
                              P::Derived));
      ck.push_back(make_flag("AC-10", "N = " + n + " W(i) < 0 for all i", row.negative_w, P::Published));
      ck.push_back(make_check("AC-10", "N = " + n + " rmin_emp >= certified rmin_lower", ">=",
                              rep.certificate.rmin_lower, row.rmin_emp, P::Derived));
      ck.push_back(make_check("AC-10", "N = " + n + " rmin_emp >= 0.67985", ">=", kFullLJRminBound, row.rmin_emp,
                              P::Published));
      ck.push_back(make_check("AC-10", "N = " + n + " -U/N <= B", "<=", cfg.stability_B, row.stability_quotient,
                              P::Published));
      ck.push_back(make_flag("AC-10", "N = " + n + " max W+ >= V_a(rmin_emp)", row.wplus_witness, P::Published));
    }
    for (std::size_t i = 0; i < rep.oracle.lj.size(); ++i) {
      const auto& a = rep.oracle.lj[i];
      const auto& b = rep.oracle.cutoff[i];
      ck.push_back(make_check("AC-10", "N = " + std::to_string(a.n) + " cut-off vs LJ minimum energy", "<=", 1e-6,
                              std::abs(a.energy - b.energy), P::Derived));
    }
  }

  // AC-11: low-order coefficients
  note("mayer coefficients");
  {
    const auto lj = PotentialSpec::lennard_jones();
    BoundInputs in{cfg.beta, cfg.stability_B, rep.c.value, rep.c_tilde.value, cfg.a};
    rep.oracle.c2 = c2_exact(cfg.beta, lj, q);
    const double c2 = std::abs(rep.oracle.c2->value);
    ck.push_back(make_check("AC-11", "|C2| <= PR bound (n = 2)", "<=", coefficient_bound(2, BoundVariant::PR, in), c2,
                            P::Published));
    ck.push_back(make_check("AC-11", "|C2| <= new bound (n = 2)", "<=", coefficient_bound(2, BoundVariant::NEW, in),
                            c2, P::Published));
    rep.oracle.c3 = c3_monte_carlo(cfg.beta, lj, cfg.mc_samples, cfg.seed);
    const auto& c3 = *rep.oracle.c3;
    Check k = make_check("AC-11", "|C3| + 3 sigma + truncation <= new bound (n = 3)", "<=",
                         coefficient_bound(3, BoundVariant::NEW, in),
                         std::abs(c3.value) + 3.0 * c3.statistical_error + c3.truncation_error, P::Derived);
    k.detail = "loose by construction: the bound carries e^{3 beta B}";
    ck.push_back(k);
  }

  // AC-12: property suites
  note("property suites");
  {
    ck.push_back(make_check("AC-12", "V_a <= V_LJ with equality iff r >= a (1e5 grid): violations", "<=", 0.0,
                            static_cast<double>(detail::domination_violations(cfg.a)), P::Derived));
    const auto lj = PotentialSpec::lennard_jones();
    const double mid = integrate_midpoint(c_beta_integrand(cfg.beta, lj), 0.0, std::numeric_limits<double>::infinity(),
                                          10'000'000, mayer_split_points(lj));
    ck.push_back(make_check("AC-12", "C(beta): adaptive vs fixed-grid midpoint (1e7 points)", "~", mid, rep.c.value,
                            P::Derived, 1e-6));
    ck.push_back(make_flag("AC-12", "shell sum < 9 (exact rational, through n = 4 plus integral tail)",
                           lattice_tail_upper_exact(4) < 9, P::Published));
    const LatticeTailSum ts = lattice_tail_sum();
    ck.push_back(make_check("AC-12", "shell sum value ~ 8.57 +- 0.01", "in", 8.56, ts.upper(), P::Derived, 0.0, 8.58));

    const auto grid = make_grid(0.30, cfg.a, 1e-3);
    const auto sweep = optimize_radius(cfg.beta, grid, EllPolicy::Tight, cfg.ell, cfg.stability_B);
    double prev = -1.0;
    long non_monotone = 0, valid = 0;
    for (const auto& row : sweep.rows) {
      if (!row.valid) continue;
      ++valid;
      if (!(row.rho_new > prev)) ++non_monotone;
      prev = row.rho_new;
    }
    Check mono = make_check("AC-12", "rho_new strictly increasing in a over valid sweep: violations", "<=", 0.0,
                            static_cast<double>(non_monotone), P::Published);
    mono.detail = std::to_string(valid) + " valid of " + std::to_string(sweep.rows.size());
    ck.push_back(mono);
    ck.push_back(make_check("AC-12", "valid sweep points", ">", 0.0, static_cast<double>(valid), P::Derived));
    ck.push_back(make_check("AC-12", "gradient vs central differences (relative)", "<", 1e-6,
                            detail::gradient_fd_relative_error(cfg.seed), P::Derived));
  }
  return rep;
}

}  // namespace ljmayer
