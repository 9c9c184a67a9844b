#pragma once

// Scalar root finding and minimization used by the certificate pipeline.
// Bisection only for roots: deterministic and bracket-preserving.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace ljmayer {

struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RootResult {
  double root = 0.0;
  double lo = 0.0;  // final bracket, sign(f(lo)) != sign(f(hi))
  double hi = 0.0;
  int iterations = 0;
};

/// Bisection on [lo, hi] to bracket width <= tol. Throws BracketError when
/// f(lo) and f(hi) have the same strict sign.
template <class F>
RootResult bisect(F&& f, double lo, double hi, double tol = 1e-12, int max_iter = 400) {
  if (!(lo < hi)) throw BracketError("bisection needs lo < hi");
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return {lo, lo, lo, 0};
  if (fhi == 0.0) return {hi, hi, hi, 0};
  if (std::signbit(flo) == std::signbit(fhi))
    throw BracketError("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  RootResult res;
  while (hi - lo > tol && res.iterations < max_iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // bracket is a pair of adjacent doubles
    const double fm = f(mid);
    ++res.iterations;
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  res.lo = lo;
  res.hi = hi;
  res.root = lo + 0.5 * (hi - lo);
  return res;
}

/// Scans [lo, hi] with the given step for the first sign change and returns
/// that cell. Throws BracketError when none is found.
template <class F>
std::pair<double, double> scan_for_bracket(F&& f, double lo, double hi, double step = 1e-3) {
  double x0 = lo;
  double f0 = f(x0);
  for (long k = 1;; ++k) {
    double x1 = lo + static_cast<double>(k) * step;
    if (x1 > hi) x1 = hi;
    const double f1 = f(x1);
    if (f0 == 0.0 || std::signbit(f0) != std::signbit(f1) || f1 == 0.0) return {x0, x1};
    if (x1 >= hi) break;
    x0 = x1;
    f0 = f1;
  }
  throw BracketError("no sign change found while scanning [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
}

struct MinResult {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section search on [lo, hi] down to an interval of width tol.
template <class F>
MinResult golden_section(F&& f, double lo, double hi, double tol = 1e-10) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - invphi * (hi - lo);
  double d = lo + invphi * (hi - lo);
  double fc = f(c), fd = f(d);
  int evals = 2;
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - invphi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + invphi * (hi - lo);
      fd = f(d);
    }
    ++evals;
  }
  MinResult best{c, fc, evals};
  if (fd < best.value) best = {d, fd, evals};
  return best;
}

/// Coarse grid scan over [lo, hi] to find the best cell, then golden-section
/// refinement inside the two cells adjacent to the best grid point. Points
/// where f throws or returns a non-finite value are treated as +inf, so the
/// scan tolerates domain edges. Multiple basins are resolved by the grid.
template <class F>
MinResult grid_golden_minimize(F&& f, double lo, double hi, double grid_step = 1e-4,
                               double tol = 1e-10) {
  if (!(lo < hi)) throw std::domain_error("empty minimization interval");
  auto safe = [&](double x) {
    try {
      const double v = f(x);
      return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    } catch (const std::domain_error&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  const long n = static_cast<long>(std::ceil((hi - lo) / grid_step));
  long best_k = -1;
  double best_v = std::numeric_limits<double>::infinity();
  int evals = 0;
  for (long k = 0; k <= n; ++k) {
    const double x = std::min(hi, lo + static_cast<double>(k) * grid_step);
    const double v = safe(x);
    ++evals;
    if (v < best_v) {
      best_v = v;
      best_k = k;
    }
  }
  if (best_k < 0) throw std::domain_error("function is not finite anywhere on the interval");
  const double a = std::max(lo, lo + static_cast<double>(best_k - 1) * grid_step);
  const double b = std::min(hi, lo + static_cast<double>(best_k + 1) * grid_step);
  MinResult refined = golden_section(safe, a, b, tol);
  refined.evaluations += evals;
  const double xk = std::min(hi, lo + static_cast<double>(best_k) * grid_step);
  if (best_v < refined.value) return {xk, best_v, refined.evaluations};
  return refined;
}

}  // namespace ljmayer
