#pragma once

// Pair potentials in reduced units: well depth 1, well minimum at r = 1.
// Every evaluator takes a pair distance and rejects r <= 0 (or non-finite r)
// with std::domain_error so downstream quadrature never sees infinities.

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ljmayer {

/// 2^{-1/6}: zero of the Lennard-Jones potential.
inline const double kLJZero = std::pow(2.0, -1.0 / 6.0);

enum class PotentialKind { LJ, CutoffLJ, LJType };

inline std::string to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::LJ: return "LJ";
    case PotentialKind::CutoffLJ: return "CutoffLJ";
    case PotentialKind::LJType: return "LJType";
  }
  return "?";
}

struct PotentialSpec {
  PotentialKind kind = PotentialKind::LJ;
  double a = 0.0;  // CutoffLJ plateau radius
  // LJType constants
  double c1 = 1.0;
  double c2 = 1.0;
  double epsilon = 9.0;
  double r0 = 1.0;

  static PotentialSpec lennard_jones() { return {}; }

  static PotentialSpec cutoff(double a) {
    PotentialSpec s;
    s.kind = PotentialKind::CutoffLJ;
    s.a = a;
    return s;
  }

  static PotentialSpec lj_type(double c1, double c2, double epsilon, double r0) {
    PotentialSpec s;
    s.kind = PotentialKind::LJType;
    s.c1 = c1;
    s.c2 = c2;
    s.epsilon = epsilon;
    s.r0 = r0;
    return s;
  }
};

namespace detail {

inline void require_distance(double r) {
  if (!std::isfinite(r) || !(r > 0.0))
    throw std::domain_error("pair distance must be finite and > 0, got " + std::to_string(r));
}

inline void require_cutoff(double a) {
  if (!std::isfinite(a) || !(a > 0.0) || !(a < kLJZero))
    throw std::domain_error("cut-off radius a must lie in (0, 2^{-1/6}), got " + std::to_string(a));
}

inline void require_lj_type(const PotentialSpec& s) {
  if (!(s.c1 > 0.0) || !(s.c2 > 0.0) || !(s.epsilon > 0.0) || !(s.r0 > 0.0))
    throw std::domain_error("LJ-type constants C1, C2, epsilon, r0 must all be > 0");
}

inline double lj_raw(double r) {
  const double inv6 = 1.0 / (r * r * r * r * r * r);
  return inv6 * inv6 - 2.0 * inv6;
}

// dV/dr of 1/r^12 - 2/r^6
inline double lj_raw_derivative(double r) {
  const double inv6 = 1.0 / (r * r * r * r * r * r);
  return (-12.0 * inv6 * inv6 + 12.0 * inv6) / r;
}

}  // namespace detail

/// Throws std::domain_error when the spec violates its kind's invariants.
inline void validate(const PotentialSpec& s) {
  switch (s.kind) {
    case PotentialKind::LJ: break;
    case PotentialKind::CutoffLJ: detail::require_cutoff(s.a); break;
    case PotentialKind::LJType: detail::require_lj_type(s); break;
  }
}

/// V(r) = 1/r^12 - 2/r^6.
inline double lj_eval(double r) {
  detail::require_distance(r);
  return detail::lj_raw(r);
}

/// Lennard-Jones flattened to the constant V(a) on (0, a].
inline double cutoff_eval(double r, double a) {
  detail::require_cutoff(a);
  detail::require_distance(r);
  return detail::lj_raw(r > a ? r : a);
}

/// Two-branch power-law representative of the Lennard-Jones-type class:
/// C1/r^{3+eps} for r <= r0 and -C2/r^{3+eps} beyond. It is the extremal
/// member allowed by the class inequalities, not the class itself.
inline double ljtype_eval(double r, const PotentialSpec& s) {
  if (s.kind != PotentialKind::LJType)
    throw std::domain_error("ljtype_eval needs an LJType spec");
  detail::require_lj_type(s);
  detail::require_distance(r);
  const double p = std::pow(r, -(3.0 + s.epsilon));
  return r <= s.r0 ? s.c1 * p : -s.c2 * p;
}

/// The density step of the minimum-distance argument needs a summable
/// radial tail, i.e. epsilon > 1. Smaller exponents still give a valid
/// potential but the pipeline's c0 constant no longer applies.
inline bool density_bound_applicable(const PotentialSpec& s) {
  return s.kind != PotentialKind::LJType || s.epsilon > 1.0;
}

inline double evaluate(const PotentialSpec& s, double r) {
  switch (s.kind) {
    case PotentialKind::LJ: return lj_eval(r);
    case PotentialKind::CutoffLJ: return cutoff_eval(r, s.a);
    case PotentialKind::LJType: return ljtype_eval(r, s);
  }
  throw std::domain_error("unknown potential kind");
}

/// dV/dr. On the cut-off plateau the derivative is 0; at exactly r = a the
/// right-hand (Lennard-Jones) derivative is used.
inline double derivative(const PotentialSpec& s, double r) {
  detail::require_distance(r);
  switch (s.kind) {
    case PotentialKind::LJ: return detail::lj_raw_derivative(r);
    case PotentialKind::CutoffLJ:
      detail::require_cutoff(s.a);
      return r < s.a ? 0.0 : detail::lj_raw_derivative(r);
    case PotentialKind::LJType: {
      detail::require_lj_type(s);
      const double q = 3.0 + s.epsilon;
      const double d = -q * std::pow(r, -q - 1.0);
      return r <= s.r0 ? s.c1 * d : -s.c2 * d;
    }
  }
  throw std::domain_error("unknown potential kind");
}

/// Points where the potential or |f| stops being smooth; quadrature splits there.
inline std::vector<double> breakpoints(const PotentialSpec& s) {
  std::vector<double> pts;
  switch (s.kind) {
    case PotentialKind::LJ: pts = {kLJZero, 1.0}; break;
    case PotentialKind::CutoffLJ: pts = {s.a, kLJZero, 1.0}; break;
    case PotentialKind::LJType: pts = {s.r0}; break;
  }
  return pts;
}

struct MayerInput {
  double beta = 1.0;
  PotentialSpec potential;
};

/// Mayer edge weight e^{-beta V(r)} - 1, evaluated through expm1.
inline double mayer_f(double r, const MayerInput& in) {
  if (!(in.beta >= 0.0) || !std::isfinite(in.beta))
    throw std::domain_error("beta must be finite and >= 0");
  const double v = evaluate(in.potential, r);
  if (in.beta == 0.0) return 0.0;
  return std::expm1(-in.beta * v);
}

// ---------------------------------------------------------------------------
// Configurations

using Vec3 = std::array<double, 3>;

inline double distance(const Vec3& p, const Vec3& q) {
  const double dx = p[0] - q[0], dy = p[1] - q[1], dz = p[2] - q[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Pair energy as used inside a configuration. Unlike evaluate(), a
/// coincident pair is accepted for the cut-off potential (it sits on the
/// plateau); for the other kinds it is a singularity.
inline double pair_energy(const PotentialSpec& s, double r) {
  if (s.kind == PotentialKind::CutoffLJ && r <= s.a) {
    detail::require_cutoff(s.a);
    return detail::lj_raw(s.a);
  }
  if (!(r > 0.0)) throw std::domain_error("coincident particles: potential is singular at r = 0");
  return evaluate(s, r);
}

inline double pair_derivative(const PotentialSpec& s, double r) {
  if (s.kind == PotentialKind::CutoffLJ && r < s.a) return 0.0;
  if (!(r > 0.0)) throw std::domain_error("coincident particles: potential is singular at r = 0");
  return derivative(s, r);
}

inline double total_energy(std::span<const Vec3> x, const PotentialSpec& s) {
  double u = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) u += pair_energy(s, distance(x[i], x[j]));
  return u;
}

/// Analytic gradient of the total energy, one 3-vector per particle.
inline std::vector<Vec3> gradient(std::span<const Vec3> x, const PotentialSpec& s) {
  std::vector<Vec3> g(x.size(), Vec3{0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double r = distance(x[i], x[j]);
      const double dv = pair_derivative(s, r);
      if (dv == 0.0) continue;
      for (int k = 0; k < 3; ++k) {
        const double c = dv * (x[i][k] - x[j][k]) / r;
        g[i][k] += c;
        g[j][k] -= c;
      }
    }
  }
  return g;
}

/// Energy and gradient in one sweep; the descent loop calls this.
inline double energy_and_gradient(std::span<const Vec3> x, const PotentialSpec& s,
                                  std::vector<Vec3>& g) {
  g.assign(x.size(), Vec3{0.0, 0.0, 0.0});
  double u = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double r = distance(x[i], x[j]);
      u += pair_energy(s, r);
      const double dv = pair_derivative(s, r);
      if (dv == 0.0) continue;
      for (int k = 0; k < 3; ++k) {
        const double c = dv * (x[i][k] - x[j][k]) / r;
        g[i][k] += c;
        g[j][k] -= c;
      }
    }
  }
  return u;
}

}  // namespace ljmayer
