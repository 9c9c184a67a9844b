#pragma once

// Minimum-distance certificate for minimum-energy configurations of the
// cut-off Lennard-Jones potential V_a.
//
// Pipeline: a density constant c0 from the radial shell argument, a covering
// of space by cubes of side ell, two occupancy cases inside the densest cube
// (each yielding an upper bound on the largest positive per-particle energy
// W+), F(ell) = max of the two, and finally r_min from V_a(r_min) <= W+.
//
// Functions templated on T evaluate identically in double and in exact
// rational arithmetic (exact::Rational).

#include "ljmayer/exact.hpp"
#include "ljmayer/numerics.hpp"
#include "ljmayer/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace ljmayer {

// ---------------------------------------------------------------------------
// Constants

/// Density constant of the shell argument, 1 - 9/32.
inline const exact::Rational kC0Exact{23, 32};
inline constexpr double kC0 = 23.0 / 32.0;

/// Upper bound for the shell sum used to derive c0.
inline constexpr double kTailSumCap = 9.0;

/// Largest cube side allowed by the case analysis.
inline constexpr double kEllCap = 0.4275;

/// Covering count bound for the radius-2 sphere: (4/ell)^3 cubes of side ell.
inline double omega1(double ell) {
  const double q = 4.0 / ell;
  return q * q * q;
}

struct LatticeTailSum {
  long last_term = 0;        // partial sum runs over n = 2..last_term
  double partial = 0.0;
  double tail_upper = 0.0;   // integral bound for n > last_term
  double upper() const { return partial + tail_upper; }
};

namespace detail {
// Closed form of int_N^inf x^3/(x-1)^6 dx with y = N - 1:
// 1/(2y^2) + 1/y^3 + 3/(4y^4) + 1/(5y^5).
template <class T>
T shell_tail_integral(const T& n) {
  const T y = n - T(1);
  const T y2 = y * y, y3 = y2 * y, y4 = y3 * y, y5 = y4 * y;
  return T(1) / (T(2) * y2) + T(1) / y3 + T(3) / (T(4) * y4) + T(1) / (T(5) * y5);
}
}  // namespace detail

/// Sum over n >= 2 of n^3/(n-1)^6: partial sum through last_term plus an
/// integral bound for the rest (the summand decreases for n > 1).
inline LatticeTailSum lattice_tail_sum(long last_term = 1'000'000) {
  if (last_term < 4) throw std::domain_error("lattice_tail_sum: need last_term >= 4");
  LatticeTailSum s;
  s.last_term = last_term;
  double acc = 0.0;
  for (long n = last_term; n >= 2; --n) {  // small terms first
    const double m = static_cast<double>(n - 1);
    const double nn = static_cast<double>(n);
    const double m3 = m * m * m;
    acc += nn * nn * nn / (m3 * m3);
  }
  s.partial = acc;
  s.tail_upper = detail::shell_tail_integral(static_cast<double>(last_term));
  return s;
}

/// Exact rational upper bound of the shell sum (partial sum + integral tail).
inline exact::Rational lattice_tail_upper_exact(long last_term = 4) {
  if (last_term < 4) throw std::domain_error("lattice_tail_upper_exact: need last_term >= 4");
  exact::Rational acc(0);
  for (long n = 2; n <= last_term; ++n) {
    const exact::Rational m(n - 1);
    acc += exact::Rational(n * n * n) / exact::pow(m, 6);
  }
  return acc + detail::shell_tail_integral(exact::Rational(last_term));
}

struct LSConstants {
  double c0 = kC0;
  double omega1 = 0.0;
  double tail_sum = 0.0;
};

inline LSConstants ls_constants(double ell) {
  return {kC0, omega1(ell), lattice_tail_sum().upper()};
}

// ---------------------------------------------------------------------------
// Case margins and bounds (polynomials in ell^{-3})

/// Case 1 (opposite subcubes both occupied):
/// (23/2^12)[(2^6+1)/3^6 ell^-9 - (2/3) ell^-3] - 1.
template <class T>
T case1_margin(const T& ell) {
  const T t = T(1) / (ell * ell * ell);
  return T(23) / T(4096) * (T(65) / T(729) * t * t * t - T(2) / T(3) * t) - T(1);
}

/// Case 2 (occupancy within four subcubes):
/// (23/2^6)[(6^5+2^5)/3^11 ell^-9 - (3^2+1)/3^5 ell^-3] - 1.
template <class T>
T case2_margin(const T& ell) {
  const T t = T(1) / (ell * ell * ell);
  return T(23) / T(64) * (T(7808) / T(177147) * t * t * t - T(10) / T(243) * t) - T(1);
}

namespace detail {
// V(sqrt(6) ell / 2) and V(sqrt(3) ell / 2) written in ell directly.
template <class T>
T case1_numerator(const T& ell) {
  const T t = T(1) / (ell * ell * ell);
  const T t2 = t * t;
  return T(64) / T(729) * t2 * t2 - T(16) / T(27) * t2;
}
template <class T>
T case2_numerator(const T& ell) {
  const T t = T(1) / (ell * ell * ell);
  const T t2 = t * t;
  return T(4096) / T(729) * t2 * t2 - T(128) / T(27) * t2;
}
}  // namespace detail

enum class BoundCase { Case1 = 1, Case2 = 2 };

template <class T>
T case1_bound(const T& ell) {
  if (!(ell > T(0))) throw std::domain_error("case1_bound: ell must be > 0");
  const T den = case1_margin(ell);
  if (!(den > T(0))) throw std::domain_error("case1_bound: ell >= l1, case-1 denominator is not positive");
  return detail::case1_numerator(ell) / den;
}

template <class T>
T case2_bound(const T& ell) {
  if (!(ell > T(0))) throw std::domain_error("case2_bound: ell must be > 0");
  const T den = case2_margin(ell);
  if (!(den > T(0))) throw std::domain_error("case2_bound: ell >= l2, case-2 denominator is not positive");
  return detail::case2_numerator(ell) / den;
}

// ---------------------------------------------------------------------------
// Thresholds l1, l2

struct Threshold {
  BoundCase which = BoundCase::Case1;
  double root = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool exact_sign_change = false;  // margin(lo) > 0 > margin(hi) in exact arithmetic
};

inline double case_margin(BoundCase c, double ell) {
  return c == BoundCase::Case1 ? case1_margin(ell) : case2_margin(ell);
}

inline exact::Rational case_margin_exact(BoundCase c, const exact::Rational& ell) {
  return c == BoundCase::Case1 ? case1_margin(ell) : case2_margin(ell);
}

/// Root of the case margin by bisection on [lo, hi]. The returned bracket
/// endpoints are re-checked in exact arithmetic.
inline Threshold find_threshold(BoundCase c, double lo, double hi, double tol = 1e-12) {
  const RootResult r = bisect([c](double x) { return case_margin(c, x); }, lo, hi, tol);
  Threshold t;
  t.which = c;
  t.root = r.root;
  t.lo = r.lo;
  t.hi = r.hi;
  t.exact_sign_change = exact::sign(case_margin_exact(c, exact::from_double(r.lo))) > 0 &&
                        exact::sign(case_margin_exact(c, exact::from_double(r.hi))) < 0;
  return t;
}

/// Root with the bracket located by a coarse scan (step 1e-3) over (0.1, 1].
inline Threshold find_threshold(BoundCase c, double tol = 1e-12) {
  const auto [lo, hi] = scan_for_bracket([c](double x) { return case_margin(c, x); }, 0.1, 1.0, 1e-3);
  return find_threshold(c, lo, hi, tol);
}

inline const Threshold& ell1() {
  static const Threshold t = find_threshold(BoundCase::Case1);
  return t;
}

inline const Threshold& ell2() {
  static const Threshold t = find_threshold(BoundCase::Case2);
  return t;
}

/// sqrt(3) ell < 2^{-1/6}: the cube diagonal stays in the repulsive region.
inline double ell_diagonal_cap() { return kLJZero / std::sqrt(3.0); }

// ---------------------------------------------------------------------------
// F(ell)

/// max(case1_bound, case2_bound) on 0 < ell < min(l1, 2^{-1/6}/sqrt 3).
inline double F(double ell) {
  if (!(ell > 0.0)) throw std::domain_error("F: ell must be > 0");
  if (!(std::sqrt(3.0) * ell < kLJZero))
    throw std::domain_error("F: sqrt(3)*ell < 2^{-1/6} violated");
  if (!(ell < ell1().lo)) throw std::domain_error("F: ell < l1 violated (case-1 margin not positive)");
  return std::max(case1_bound(ell), case2_bound(ell));
}

inline exact::Rational F_exact(const exact::Rational& ell) {
  return std::max(case1_bound(ell), case2_bound(ell));
}

enum class BoundFunction { Case1, Case2, F };

inline double evaluate_bound(BoundFunction fn, double ell) {
  switch (fn) {
    case BoundFunction::Case1: return case1_bound(ell);
    case BoundFunction::Case2: return case2_bound(ell);
    case BoundFunction::F: return F(ell);
  }
  throw std::domain_error("unknown bound function");
}

/// Natural open domain (0, upper) of each bound function.
inline double bound_domain_upper(BoundFunction fn) {
  switch (fn) {
    case BoundFunction::Case1: return ell1().lo;
    case BoundFunction::Case2: return ell2().lo;
    case BoundFunction::F: return std::min(ell1().lo, ell_diagonal_cap());
  }
  return 0.0;
}

/// Grid scan followed by golden-section refinement.
inline MinResult minimize_bound(BoundFunction fn, double lo, double hi, double grid_step = 1e-4,
                                double tol = 1e-10) {
  const double upper = bound_domain_upper(fn);
  lo = std::max(lo, 0.0);
  hi = std::min(hi, upper);
  if (!(lo < hi)) throw std::domain_error("minimize_bound: empty admissible interval");
  return grid_golden_minimize([fn](double x) { return evaluate_bound(fn, x); }, lo, hi, grid_step, tol);
}

inline MinResult minimize_bound(BoundFunction fn) {
  return minimize_bound(fn, 0.2, bound_domain_upper(fn));
}

// ---------------------------------------------------------------------------
// Certificate

struct GridParams {
  double ell = 0.42;
  double a = 0.3637;
};

struct CheckItem {
  std::string name;
  bool holds = false;
  std::string detail;
};

/// Floating-point strict inequality x < y with relative safety margin 1e-9.
inline bool strictly_below(double x, double y, double rel = 1e-9) {
  return x < y - rel * std::max(std::abs(x), std::abs(y));
}

/// Violated grid conditions, empty when admissible.
inline std::vector<std::string> grid_violations(const GridParams& p) {
  std::vector<std::string> v;
  if (!(p.ell > 0.0)) v.push_back("ell > 0");
  if (!(p.a > 0.0) || !(p.a < kLJZero)) v.push_back("0 < a < 2^{-1/6}");
  if (!strictly_below(std::sqrt(3.0) * p.ell, kLJZero)) v.push_back("sqrt(3)*ell < 2^{-1/6}");
  if (!(p.ell <= kEllCap)) v.push_back("ell <= 0.4275");
  if (!(p.a <= std::sqrt(3.0) / 2.0 * p.ell)) v.push_back("a <= (sqrt(3)/2)*ell");
  return v;
}

/// The same grid conditions decided in exact arithmetic on the exact values
/// of the given doubles.
inline std::vector<CheckItem> grid_checks_exact(const GridParams& p) {
  using exact::Rational;
  const Rational ell = exact::from_double(p.ell);
  const Rational a = exact::from_double(p.a);
  const Rational ell2 = ell * ell;
  std::vector<CheckItem> out;
  // sqrt(3) ell < 2^{-1/6}  <=>  2 (3 ell^2)^3 < 1
  out.push_back({"exact: sqrt(3)*ell < 2^{-1/6}", ell > 0 && 2 * exact::pow(3 * ell2, 3) < 1, "2*(3 ell^2)^3 < 1"});
  out.push_back({"exact: ell <= 0.4275", ell <= exact::parse_decimal("0.4275"), ""});
  // a <= (sqrt(3)/2) ell  <=>  4 a^2 <= 3 ell^2 (a, ell > 0)
  out.push_back({"exact: a <= (sqrt(3)/2)*ell", a > 0 && 4 * a * a <= 3 * ell2, "4 a^2 <= 3 ell^2"});
  out.push_back({"exact: case-1 margin > 0", exact::sign(case1_margin(ell)) > 0, ""});
  out.push_back({"exact: case-2 margin > 0", exact::sign(case2_margin(ell)) > 0, ""});
  return out;
}

struct LSCertificate {
  double a = 0.0;
  double ell = 0.0;
  double margin_case1 = 0.0;
  double margin_case2 = 0.0;
  double wplus_bound = 0.0;   // F(ell), upper bound on W+
  double plateau = 0.0;       // V_a on (0, a]
  double rmin_lower = 0.0;    // certified: r_min > rmin_lower
  double rmin_bracket_hi = 0.0;
  bool valid = false;
  std::string failure_reason;
  std::vector<CheckItem> checks;
};

/// Certified lower bound on the minimal pair distance in any minimum-energy
/// configuration of V_a. W+ <= F(ell) and V_a(r_min) <= W+, so r_min lies
/// beyond the point where the (decreasing) repulsive branch falls to F(ell).
/// The returned rmin_lower is the low end of the final bisection bracket,
/// where V_a still exceeds F(ell); this is re-verified in exact arithmetic.
inline LSCertificate rmin_certificate(double a, double ell, double tol = 1e-10) {
  LSCertificate c;
  c.a = a;
  c.ell = ell;
  const GridParams p{ell, a};
  const auto violations = grid_violations(p);
  if (!violations.empty()) {
    c.failure_reason = "violated: ";
    for (std::size_t i = 0; i < violations.size(); ++i)
      c.failure_reason += (i ? "; " : "") + violations[i];
    for (const auto& v : violations) c.checks.push_back({v, false, "grid condition"});
    return c;
  }
  c.margin_case1 = case1_margin(ell);
  c.margin_case2 = case2_margin(ell);
  c.checks.push_back({"case-1 margin > 0", c.margin_case1 > 1e-9, std::to_string(c.margin_case1)});
  c.checks.push_back({"case-2 margin > 0", c.margin_case2 > 1e-9, std::to_string(c.margin_case2)});
  if (!(c.margin_case1 > 1e-9) || !(c.margin_case2 > 1e-9)) {
    c.failure_reason = "case margin not positive at ell";
    return c;
  }
  c.wplus_bound = F(ell);
  c.plateau = cutoff_eval(a, a);
  if (!(c.plateau > c.wplus_bound)) {
    // V_a never reaches above F(ell): the argument yields nothing
    c.failure_reason = "plateau V_a(a) <= F(ell); no distance bound";
    return c;
  }
  const double w = c.wplus_bound;
  const RootResult root = bisect([w](double r) { return lj_eval(r) - w; }, a, kLJZero, tol);
  c.rmin_lower = root.lo;
  c.rmin_bracket_hi = root.hi;

  for (auto& item : grid_checks_exact(p)) c.checks.push_back(std::move(item));
  {
    using exact::Rational;
    const Rational r = exact::from_double(c.rmin_lower);
    const Rational r6 = exact::pow(r, 6);
    const Rational v = 1 / (r6 * r6) - 2 / r6;
    const Rational fx = F_exact(exact::from_double(ell));
    c.checks.push_back({"exact: V_a(rmin_lower) > F(ell)", v > fx,
                        "so V_a(r) > W+ for every r <= rmin_lower"});
    c.checks.push_back({"exact: rmin_lower > a", r > exact::from_double(a), ""});
  }
  c.checks.push_back({"rmin_lower < 2^{-1/6}", c.rmin_lower < kLJZero, ""});

  c.valid = std::all_of(c.checks.begin(), c.checks.end(), [](const CheckItem& i) { return i.holds; }) &&
            c.rmin_lower > a;
  if (!c.valid) {
    for (const auto& i : c.checks)
      if (!i.holds) c.failure_reason += (c.failure_reason.empty() ? "" : "; ") + i.name;
  }
  return c;
}

/// Known minimal-distance bound for minimizers of the full potential.
inline constexpr double kFullLJRminBound = 0.67985;

struct EquivalenceRecord {
  LSCertificate certificate;
  double full_lj_rmin_bound = kFullLJRminBound;
  /// r_min(V_a) > a: V_a minimizers avoid the plateau, hence minimize V_LJ too.
  CheckItem cutoff_minimizers_are_lj_minimizers;
  /// r_min(V_LJ) > a: V_LJ minimizers never feel the cut-off, hence minimize V_a.
  CheckItem lj_minimizers_are_cutoff_minimizers;
  bool certified = false;
};

/// Equality of the stability constants of V_a and V_LJ, certified when both
/// minimal-distance bounds clear the cut-off radius.
inline EquivalenceRecord verify_stability_equivalence(double a, double ell, double full_lj_rmin = kFullLJRminBound) {
  EquivalenceRecord rec;
  rec.full_lj_rmin_bound = full_lj_rmin;
  rec.certificate = rmin_certificate(a, ell);
  const auto& c = rec.certificate;
  rec.cutoff_minimizers_are_lj_minimizers = {
      "V_a minimizers are V_LJ minimizers", c.valid && c.rmin_lower > a,
      "rmin_lower = " + std::to_string(c.rmin_lower) + " vs a = " + std::to_string(a)};
  rec.lj_minimizers_are_cutoff_minimizers = {
      "V_LJ minimizers are V_a minimizers", full_lj_rmin > a,
      "full-LJ r_min bound " + std::to_string(full_lj_rmin) + " vs a = " + std::to_string(a)};
  rec.certified = rec.cutoff_minimizers_are_lj_minimizers.holds && rec.lj_minimizers_are_cutoff_minimizers.holds;
  return rec;
}

}  // namespace ljmayer
