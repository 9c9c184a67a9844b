#pragma once

// Radial quadrature for the Mayer-type integrals C(beta) and C~(beta).
//
// integrate_radial() is a globally adaptive Gauss-Kronrod (G7/K15) scheme:
// the panel with the largest |K15 - G7| is bisected until the total error
// estimate meets max(abs_tol, rel_tol*|value|). An infinite upper limit is
// mapped by u = 1/r. Error estimates are heuristic; certified statements use
// the closed-form overestimates further down.

#include "ljmayer/potentials.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ljmayer {

struct QuadratureSpec {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  int max_subdivisions = 4000;
  std::vector<double> split_points;  // strictly increasing, > 0
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions_used = 0;
  bool converged = false;
};

using RadialFunction = std::function<double(double)>;

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights at kXgk[1], kXgk[3], kXgk[5], kXgk[7]
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi;
  bool tail;  // integrate g(1/u)/u^2 over u in [lo, hi]
  double value = 0.0;
  double error = 0.0;
};

inline double mapped(const RadialFunction& g, bool tail, double x) {
  if (!tail) return g(x);
  const double r = 1.0 / x;
  return g(r) * r * r;
}

inline void gauss_kronrod(const RadialFunction& g, Panel& p) {
  const double c = 0.5 * (p.lo + p.hi);
  const double h = 0.5 * (p.hi - p.lo);
  const double fc = mapped(g, p.tail, c);
  double kron = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = mapped(g, p.tail, c - dx);
    const double f2 = mapped(g, p.tail, c + dx);
    kron += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  p.value = kron * h;
  p.error = std::abs((kron - gauss) * h);
}

inline void validate_spec(const QuadratureSpec& s) {
  if (!(s.abs_tol > 0.0) || !(s.rel_tol > 0.0)) throw std::domain_error("quadrature tolerances must be > 0");
  if (s.max_subdivisions < 1) throw std::domain_error("max_subdivisions must be >= 1");
  for (std::size_t i = 0; i < s.split_points.size(); ++i) {
    if (!(s.split_points[i] > 0.0)) throw std::domain_error("split points must be > 0");
    if (i && !(s.split_points[i] > s.split_points[i - 1]))
      throw std::domain_error("split points must be strictly increasing");
  }
}

// Initial panels: finite pieces between split points, plus a u = 1/r tail.
inline std::vector<Panel> initial_panels(double lo, double hi, const std::vector<double>& splits) {
  std::vector<double> pts{lo};
  for (double s : splits)
    if (s > lo && s < hi) pts.push_back(s);
  const bool infinite = std::isinf(hi);
  if (infinite && pts.back() < 1.0) pts.push_back(1.0);
  if (!infinite) pts.push_back(hi);
  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) panels.push_back({pts[i], pts[i + 1], false});
  if (infinite) panels.push_back({0.0, 1.0 / pts.back(), true});
  return panels;
}

}  // namespace detail

/// Adaptive quadrature of g over [lo, hi] (hi may be +infinity). Returns
/// converged = false when max_subdivisions is exhausted first.
inline IntegralResult integrate_radial(const RadialFunction& g, double lo, double hi,
                                       const QuadratureSpec& spec = {}) {
  detail::validate_spec(spec);
  if (!(lo >= 0.0) || !(hi > lo)) throw std::domain_error("integrate_radial: need 0 <= lo < hi");
  std::vector<detail::Panel> panels = detail::initial_panels(lo, hi, spec.split_points);
  for (auto& p : panels) detail::gauss_kronrod(g, p);

  auto totals = [&panels] {
    double v = 0.0, e = 0.0;
    for (const auto& p : panels) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };

  IntegralResult res;
  auto [value, error] = totals();
  while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
    if (res.subdivisions_used >= spec.max_subdivisions) break;
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const auto& x, const auto& y) { return x.error < y.error; });
    const double mid = 0.5 * (worst->lo + worst->hi);
    if (!(mid > worst->lo && mid < worst->hi)) break;  // cannot split further
    detail::Panel right{mid, worst->hi, worst->tail};
    worst->hi = mid;
    detail::gauss_kronrod(g, *worst);
    detail::gauss_kronrod(g, right);
    panels.insert(worst + 1, right);
    ++res.subdivisions_used;
    std::tie(value, error) = totals();
  }
  res.value = value;
  res.error_estimate = error;
  res.converged = error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
  return res;
}

/// Fixed-grid composite midpoint rule over the same panels as
/// integrate_radial (u = 1/r on the infinite tail), with the points split
/// evenly across panels. Used as an independent second method.
inline double integrate_midpoint(const RadialFunction& g, double lo, double hi, long points,
                                 const std::vector<double>& splits = {}) {
  if (points < 1) throw std::domain_error("integrate_midpoint: need points >= 1");
  const auto panels = detail::initial_panels(lo, hi, splits);
  const long per = std::max(1L, points / static_cast<long>(panels.size()));
  double total = 0.0;
  for (const auto& p : panels) {
    const double h = (p.hi - p.lo) / static_cast<double>(per);
    double s = 0.0;
    for (long k = 0; k < per; ++k) s += detail::mapped(g, p.tail, p.lo + (static_cast<double>(k) + 0.5) * h);
    total += s * h;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Mayer-type integrals

/// Breakpoints for the Mayer integrands: the potential's own kinks plus a
/// first panel ending at a (cut-off) or 0.3 where 1 - e^{-beta V} ~ 1.
inline std::vector<double> mayer_split_points(const PotentialSpec& s) {
  std::vector<double> pts = breakpoints(s);
  if (s.kind == PotentialKind::LJ) pts.insert(pts.begin(), 0.3);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

/// Radial integrand 4 pi r^2 |e^{-beta V(r)} - 1|.
inline RadialFunction c_beta_integrand(double beta, const PotentialSpec& s) {
  return [beta, s](double r) {
    const double v = evaluate(s, r);
    return 4.0 * std::numbers::pi * r * r * std::abs(std::expm1(-beta * v));
  };
}

/// C(beta) = integral over R^3 of |e^{-beta V} - 1|.
inline IntegralResult c_beta(double beta, const PotentialSpec& s, QuadratureSpec q = {}) {
  if (!(beta > 0.0)) throw std::domain_error("c_beta: beta must be > 0");
  validate(s);
  if (q.split_points.empty()) q.split_points = mayer_split_points(s);
  return integrate_radial(c_beta_integrand(beta, s), 0.0, std::numeric_limits<double>::infinity(), q);
}

/// Radial integrand of C~: 4 pi r^2 [ |e^{-beta (V_LJ - V_a)} - 1| + beta |V_a| ].
/// The first term lives on r < a only.
inline RadialFunction tilde_c_integrand(double beta, double a) {
  return [beta, a](double r) {
    const double va = cutoff_eval(r, a);
    double first = 0.0;
    if (r < a) first = -std::expm1(-beta * (lj_eval(r) - va));
    return 4.0 * std::numbers::pi * r * r * (first + beta * std::abs(va));
  };
}

inline IntegralResult tilde_c_beta(double beta, double a, QuadratureSpec q = {}) {
  if (!(beta > 0.0)) throw std::domain_error("tilde_c_beta: beta must be > 0");
  detail::require_cutoff(a);
  if (q.split_points.empty()) q.split_points = mayer_split_points(PotentialSpec::cutoff(a));
  return integrate_radial(tilde_c_integrand(beta, a), 0.0, std::numeric_limits<double>::infinity(), q);
}

// ---------------------------------------------------------------------------
// Closed forms

namespace detail {
// Antiderivative of V_LJ(r) r^2.
inline double lj_moment_antiderivative(double r) {
  const double r3 = r * r * r;
  return -1.0 / (9.0 * r3 * r3 * r3) + 2.0 / (3.0 * r3);
}
}  // namespace detail

/// Integral of |V_LJ(r)| r^2 dr over [lo, infinity).
inline double lj_abs_moment(double lo) {
  if (!(lo > 0.0)) throw std::domain_error("lj_abs_moment: lo must be > 0");
  const double g_zero = detail::lj_moment_antiderivative(kLJZero);
  double total = 0.0;
  if (lo < kLJZero) total += g_zero - detail::lj_moment_antiderivative(lo);
  // V < 0 beyond the zero: contributes -(G(inf) - G(max(lo, zero))) with G(inf) = 0
  total += detail::lj_moment_antiderivative(std::max(lo, kLJZero));
  return total;
}

/// 4 pi times the attractive tail of |V_LJ| r^2, equal to 16 sqrt(2) pi / 9.
inline double attractive_tail_closed_form() { return 4.0 * std::numbers::pi * lj_abs_moment(kLJZero); }

inline double attractive_tail_exact_value() { return 16.0 * std::numbers::sqrt2 * std::numbers::pi / 9.0; }

/// Closed-form majorant of C~(beta): the first term bounded by 1 on the
/// ball of radius a, |V_a| <= a^{-12} on the plateau, exact LJ moment beyond.
inline double tilde_c_overestimate(double beta, double a) {
  detail::require_cutoff(a);
  const double a3 = a * a * a;
  const double a12 = a3 * a3 * a3 * a3;
  return 4.0 / 3.0 * std::numbers::pi * a3 * (1.0 + beta / a12) +
         beta * 4.0 * std::numbers::pi * lj_abs_moment(a);
}

/// Radial integrand of the majorant above, for a quadrature cross-check.
inline RadialFunction tilde_c_overestimate_integrand(double beta, double a) {
  return [beta, a](double r) {
    const double w = 4.0 * std::numbers::pi * r * r;
    if (r < a) return w * (1.0 + beta * std::pow(a, -12.0));
    return w * beta * std::abs(lj_eval(r));
  };
}

}  // namespace ljmayer
