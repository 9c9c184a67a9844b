#pragma once

// Convergence-radius lower bounds for the Mayer series.
//
//   classical (stable + tempered):  rho_PR  = 1 / (e^{2 beta B + 1} C(beta))
//   split potential (V_LJ - V_a) + V_a with stab(V_a) = B:
//                                   rho_new = 1 / (e^{beta B + 1} C~(beta))
//
// Using an upper bound for B keeps both radii conservative.

#include "ljmayer/exact.hpp"
#include "ljmayer/lsbound.hpp"
#include "ljmayer/quad.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ljmayer {

/// Stability-constant upper bound for V_LJ from the literature.
inline constexpr double kStabilityLJ = 41.66;
/// Conservative constants: C(1) > 7.89 and C~(1) < 50000 at a = 0.3637.
inline constexpr double kConservativeC = 7.89;
inline constexpr double kConservativeTildeC = 50000.0;

struct BoundInputs {
  double beta = 1.0;
  double B = kStabilityLJ;
  double C = kConservativeC;
  double C_tilde = kConservativeTildeC;
  double a = 0.3637;
};

inline void validate(const BoundInputs& in) {
  if (!(in.beta > 0.0)) throw std::domain_error("beta must be > 0");
  if (!(in.B >= 0.0)) throw std::domain_error("stability constant B must be >= 0");
  if (!(in.C > 0.0)) throw std::domain_error("C must be > 0");
  if (!(in.C_tilde > 0.0)) throw std::domain_error("C_tilde must be > 0");
}

inline double pr_radius(const BoundInputs& in) {
  validate(in);
  return std::exp(-(2.0 * in.beta * in.B + 1.0)) / in.C;
}

inline double mps_radius(const BoundInputs& in) {
  validate(in);
  return std::exp(-(in.beta * in.B + 1.0)) / in.C_tilde;
}

enum class BoundVariant { PR, NEW };

/// log of the n-th coefficient bound; C_1 = 1 by convention (n^{n-2} = 1 at n = 1).
inline double log_coefficient_bound(int n, BoundVariant v, const BoundInputs& in) {
  if (n < 1) throw std::domain_error("coefficient_bound: order n must be >= 1");
  validate(in);
  if (n == 1) return 0.0;
  const double dn = n;
  const double log_comb = (dn - 2.0) * std::log(dn) - std::lgamma(dn + 1.0);
  if (v == BoundVariant::PR) return 2.0 * in.beta * in.B * (dn - 1.0) + log_comb + (dn - 1.0) * std::log(in.C);
  return in.beta * in.B * dn + log_comb + (dn - 1.0) * std::log(in.C_tilde);
}

/// PR:  e^{2 beta B (n-1)} n^{n-2} C^{n-1} / n!
/// NEW: e^{beta B n}       n^{n-2} C~^{n-1} / n!
inline double coefficient_bound(int n, BoundVariant v, const BoundInputs& in) {
  if (n == 1) {
    validate(in);
    return 1.0;
  }
  return std::exp(log_coefficient_bound(n, v, in));
}

struct CoefficientRow {
  int n = 0;
  double pr = 0.0;
  double next = 0.0;  // NEW variant
};

struct RadiusReport {
  double rho_pr = 0.0;
  double rho_new = 0.0;
  double ratio_lower_bound = 0.0;     // conservative constants
  double ratio_computed = 0.0;        // computed C and C~
  std::vector<CoefficientRow> coefficient_bounds;
  BoundInputs inputs;
  std::optional<LSCertificate> certificate;
};

/// rho_new / rho_pr = e^{2 beta B + 1} C / (e^{beta B' + 1} C~).
inline double improvement_ratio(const BoundInputs& pr_inputs, const BoundInputs& new_inputs) {
  validate(pr_inputs);
  validate(new_inputs);
  if (pr_inputs.beta != new_inputs.beta) throw std::domain_error("improvement_ratio: inputs at different beta");
  return std::exp(2.0 * pr_inputs.beta * pr_inputs.B - new_inputs.beta * new_inputs.B) * pr_inputs.C /
         new_inputs.C_tilde;
}

/// Exact version of the headline comparison with decimal inputs:
/// e^{B} * C / C~ >= e^{B} / denom  and  e^{B} / denom >= e^{target}.
struct ExactRatioCheck {
  bool ratio_ge_exp_over_denom = false;  // C * denom >= C~
  bool exp_over_denom_ge_target = false; // e^{B - target} >= denom (Taylor lower bound)
  double exp_gap_lower = 0.0;            // lower bound of e^{B - target}
};

inline ExactRatioCheck exact_ratio_check(std::string_view B, std::string_view C, std::string_view C_tilde,
                                         std::string_view denom, std::string_view target_exponent) {
  using exact::Rational;
  const Rational b = exact::parse_decimal(B);
  const Rational c = exact::parse_decimal(C);
  const Rational ct = exact::parse_decimal(C_tilde);
  const Rational d = exact::parse_decimal(denom);
  const Rational t = exact::parse_decimal(target_exponent);
  ExactRatioCheck out;
  out.ratio_ge_exp_over_denom = c * d >= ct;
  if (b >= t) {
    const Rational lower = exact::exp_lower_bound(b - t, 80);
    out.exp_gap_lower = exact::to_double(lower);
    out.exp_over_denom_ge_target = lower >= d;
  }
  return out;
}

inline RadiusReport make_radius_report(const BoundInputs& pr_inputs, const BoundInputs& new_inputs,
                                       double computed_C, double computed_C_tilde, int max_order = 6) {
  RadiusReport rep;
  rep.inputs = new_inputs;
  rep.rho_pr = pr_radius(pr_inputs);
  rep.rho_new = mps_radius(new_inputs);
  rep.ratio_lower_bound = improvement_ratio(pr_inputs, new_inputs);
  BoundInputs pc = pr_inputs, nc = new_inputs;
  pc.C = computed_C;
  nc.C_tilde = computed_C_tilde;
  rep.ratio_computed = improvement_ratio(pc, nc);
  for (int n = 2; n <= max_order; ++n)
    rep.coefficient_bounds.push_back({n, coefficient_bound(n, BoundVariant::PR, pc),
                                      coefficient_bound(n, BoundVariant::NEW, nc)});
  return rep;
}

// ---------------------------------------------------------------------------
// Sweep over the cut-off radius

enum class EllPolicy {
  Tight,      // ell = 2a/sqrt(3), the smallest ell allowed by a <= (sqrt(3)/2) ell
  Fixed,      // the caller's ell
  MinimizeF,  // argmin of F over [2a/sqrt(3), 0.4275]
};

/// Smallest double ell with a <= (sqrt(3)/2) ell in floating point.
inline double tight_ell(double a) {
  double ell = 2.0 * a / std::sqrt(3.0);
  while (!(a <= std::sqrt(3.0) / 2.0 * ell)) ell = std::nextafter(ell, 1.0);
  return ell;
}

inline double choose_ell(double a, EllPolicy policy, double fixed_ell = 0.42) {
  switch (policy) {
    case EllPolicy::Tight: return tight_ell(a);
    case EllPolicy::Fixed: return fixed_ell;
    case EllPolicy::MinimizeF: {
      const double lo = tight_ell(a);
      if (!(lo < kEllCap)) return lo;
      return minimize_bound(BoundFunction::F, lo, kEllCap, 1e-4, 1e-10).x;
    }
  }
  return fixed_ell;
}

struct SweepRow {
  double a = 0.0;
  double ell = 0.0;
  double C_tilde = 0.0;
  double rho_new = 0.0;
  bool valid = false;
  std::string note;
};

struct OptimizeResult {
  std::vector<SweepRow> rows;  // in grid order
  std::optional<std::size_t> best;
  std::optional<EquivalenceRecord> best_record;
};

/// For each candidate a: certificate (with ell from the policy) and C~; the
/// valid candidate with the largest rho_new wins.
inline OptimizeResult optimize_radius(double beta, const std::vector<double>& a_grid, EllPolicy policy,
                                      double fixed_ell = 0.42, double B = kStabilityLJ) {
  OptimizeResult out;
  double best_rho = -1.0;
  for (double a : a_grid) {
    SweepRow row;
    row.a = a;
    try {
      row.ell = choose_ell(a, policy, fixed_ell);
      const EquivalenceRecord rec = verify_stability_equivalence(a, row.ell);
      row.valid = rec.certified;
      if (!row.valid) row.note = rec.certificate.failure_reason;
      const IntegralResult ct = tilde_c_beta(beta, a);
      row.C_tilde = ct.value;
      row.rho_new = mps_radius({beta, B, kConservativeC, ct.value, a});
      if (!ct.converged) {
        row.valid = false;
        row.note = "C~ quadrature did not converge";
      }
      if (row.valid && row.rho_new > best_rho) {
        best_rho = row.rho_new;
        out.best = out.rows.size();
        out.best_record = rec;
      }
    } catch (const std::exception& e) {
      row.valid = false;
      row.note = e.what();
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

/// a_lo, a_lo + step, ... up to a_hi inclusive (a_hi appended when the step
/// does not land on it).
inline std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw std::domain_error("make_grid: need step > 0 and hi >= lo");
  std::vector<double> g;
  const long n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long k = 0; k <= n; ++k) g.push_back(lo + static_cast<double>(k) * step);
  if (hi - g.back() > 1e-12) g.push_back(hi);
  return g;
}

}  // namespace ljmayer
