#pragma once

// Brute-force consistency oracles at desk scale:
//  * multistart gradient descent for small clusters (empirical minima,
//    per-particle energies, minimal distances),
//  * connected labeled graphs on n <= 5 vertices,
//  * the second Mayer coefficient by quadrature and the third by Monte Carlo.
// Results are evidence, never certificates.

#include "ljmayer/potentials.hpp"
#include "ljmayer/quad.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ljmayer {

inline constexpr int kMaxClusterSize = 13;
inline constexpr int kMaxGraphOrder = 5;

/// Per-worker generator derived from (seed, stream index).
inline std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Runs body(i) for i in [0, count) on up to `workers` threads. Each index is
/// handled exactly once; callers store results by index, so the outcome does
/// not depend on the number of workers.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
}

// ---------------------------------------------------------------------------
// Configurations

struct Configuration {
  std::vector<Vec3> positions;
  double energy = 0.0;
  std::vector<double> per_particle_w;  // W(i) = sum_{j != i} V(|x_i - x_j|)
  double rmin_emp = 0.0;
  double gradient_norm = 0.0;
};

inline Configuration make_configuration(std::vector<Vec3> x, const PotentialSpec& s) {
  Configuration c;
  c.positions = std::move(x);
  const std::size_t n = c.positions.size();
  c.per_particle_w.assign(n, 0.0);
  c.rmin_emp = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = distance(c.positions[i], c.positions[j]);
      const double v = pair_energy(s, r);
      c.energy += v;
      c.per_particle_w[i] += v;
      c.per_particle_w[j] += v;
      c.rmin_emp = std::min(c.rmin_emp, r);
    }
  const auto g = gradient(c.positions, s);
  double g2 = 0.0;
  for (const auto& gi : g) g2 += gi[0] * gi[0] + gi[1] * gi[1] + gi[2] * gi[2];
  c.gradient_norm = std::sqrt(g2);
  return c;
}

struct WSplit {
  std::vector<double> plus;   // pairs closer than 2^{-1/6}, each term >= 0
  std::vector<double> minus;  // the remaining pairs, each term <= 0
};

inline WSplit w_split(const Configuration& c, const PotentialSpec& s) {
  const std::size_t n = c.positions.size();
  WSplit w{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double r = distance(c.positions[i], c.positions[j]);
      (r < kLJZero ? w.plus : w.minus)[i] += pair_energy(s, r);
    }
  return w;
}

/// W(i) < 0 for every particle: necessary at a true minimum, since a particle
/// with W(i) >= 0 could be moved far away without raising the energy.
inline std::vector<bool> check_negative_w(const Configuration& c) {
  std::vector<bool> ok(c.per_particle_w.size());
  for (std::size_t i = 0; i < ok.size(); ++i) ok[i] = c.per_particle_w[i] < 0.0;
  return ok;
}

inline bool all_pass(const std::vector<bool>& v) {
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

inline void write_xyz(std::ostream& os, const Configuration& c) {
  const auto flags = os.flags();
  const auto prec = os.precision(12);
  os << std::fixed;
  for (const auto& p : c.positions) os << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
  os.flags(flags);
  os.precision(prec);
}

// ---------------------------------------------------------------------------
// Descent

struct DescentOptions {
  double gradient_tol = 1e-8;
  long max_iters = 200000;
  double max_displacement = 0.1;  // per particle per step
};

struct DescentResult {
  std::vector<Vec3> x;
  double energy = 0.0;
  double gradient_norm = 0.0;
  long iterations = 0;
  bool converged = false;
};

namespace detail {
inline double norm2(const std::vector<Vec3>& g) {
  double s = 0.0;
  for (const auto& v : g) s += v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  return s;
}
inline double max_component_norm(const std::vector<Vec3>& g) {
  double m = 0.0;
  for (const auto& v : g) m = std::max(m, std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]));
  return m;
}
}  // namespace detail

/// Steepest descent with backtracking (Armijo, c = 1e-4). The trial step
/// is the Barzilai-Borwein length s.s/s.y from the previous move, halved until
/// accepted. Once energy differences drop to rounding level a step is accepted
/// on a decrease of the gradient norm instead, so the 1e-8 gradient target is
/// reachable in double precision.
inline DescentResult local_descent(std::vector<Vec3> x, const PotentialSpec& s, const DescentOptions& opt = {}) {
  std::vector<Vec3> g, g_new, x_new(x.size());
  double e = energy_and_gradient(x, s, g);
  double g2 = detail::norm2(g);
  double trial = 1e-3;
  DescentResult res;
  for (; res.iterations < opt.max_iters; ++res.iterations) {
    if (std::sqrt(g2) < opt.gradient_tol) break;
    const double gmax = detail::max_component_norm(g);
    double t = std::min(trial, opt.max_displacement / gmax);
    bool accepted = false;
    while (t > 1e-18) {
      for (std::size_t i = 0; i < x.size(); ++i)
        for (int k = 0; k < 3; ++k) x_new[i][k] = x[i][k] - t * g[i][k];
      const double e_new = energy_and_gradient(x_new, s, g_new);
      const double g2_new = detail::norm2(g_new);
      const double noise = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(e));
      bool ok = false;
      if (std::isfinite(e_new)) {
        if (std::abs(e_new - e) <= noise)
          ok = g2_new < g2;
        else
          ok = e_new <= e - 1e-4 * t * g2;
      }
      if (ok) {
        // s = -t g, y = g_new - g  =>  s.s / s.y = t g.g / (g.g - g.g_new)
        double gg_new = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
          for (int k = 0; k < 3; ++k) gg_new += g[i][k] * g_new[i][k];
        const double sy = g2 - gg_new;
        trial = sy > 0.0 ? t * g2 / sy : 2.0 * t;
        x.swap(x_new);
        g.swap(g_new);
        e = e_new;
        g2 = g2_new;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // stalled at rounding level
  }
  res.x = std::move(x);
  res.energy = e;
  res.gradient_norm = std::sqrt(g2);
  res.converged = res.gradient_norm < opt.gradient_tol;
  return res;
}

/// Uniform points in a box of side 2 N^{1/3}, rejecting any point closer
/// than 0.5 to an earlier one.
inline std::vector<Vec3> random_start(int n, std::mt19937_64& rng) {
  const double side = 2.0 * std::cbrt(static_cast<double>(n));
  std::uniform_real_distribution<double> u(0.0, side);
  std::vector<Vec3> x;
  while (static_cast<int>(x.size()) < n) {
    const Vec3 p{u(rng), u(rng), u(rng)};
    bool ok = true;
    for (const auto& q : x)
      if (distance(p, q) < 0.5) {
        ok = false;
        break;
      }
    if (ok) x.push_back(p);
  }
  return x;
}

struct MinimizeResult {
  Configuration best;
  std::size_t best_start = 0;
  std::vector<double> start_energies;  // by start index
  bool converged = false;
  long iterations = 0;
};

/// Multistart descent; start i uses the generator derived from (seed, i).
/// The best (lowest energy, then lowest index) start is returned.
inline MinimizeResult minimize_energy(int n, const PotentialSpec& s, int starts, std::uint64_t seed,
                                      const DescentOptions& opt = {}, unsigned workers = default_workers()) {
  if (n < 2 || n > kMaxClusterSize)
    throw std::domain_error("minimize_energy: N must be in [2, " + std::to_string(kMaxClusterSize) + "]");
  if (starts < 1) throw std::domain_error("minimize_energy: need at least one start");
  validate(s);
  std::vector<DescentResult> runs(static_cast<std::size_t>(starts));
  parallel_for(runs.size(), workers, [&](std::size_t i) {
    auto rng = derived_rng(seed, i);
    runs[i] = local_descent(random_start(n, rng), s, opt);
  });
  MinimizeResult out;
  std::size_t best = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    out.start_energies.push_back(runs[i].energy);
    if (runs[i].energy < runs[best].energy) best = i;
  }
  out.best_start = best;
  out.best = make_configuration(runs[best].x, s);
  out.converged = runs[best].converged;
  out.iterations = runs[best].iterations;
  return out;
}

/// Random perturbations of size delta never lower the energy by more than tol.
inline bool local_minimality_probe(const Configuration& c, const PotentialSpec& s, int trials = 32,
                                   double delta = 1e-4, double tol = 1e-8, std::uint64_t seed = 0) {
  auto rng = derived_rng(seed, 0xfeed);
  std::normal_distribution<double> nd;
  for (int t = 0; t < trials; ++t) {
    std::vector<Vec3> x = c.positions;
    double norm = 0.0;
    std::vector<Vec3> d(x.size());
    for (auto& v : d)
      for (auto& comp : v) {
        comp = nd(rng);
        norm += comp * comp;
      }
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (int k = 0; k < 3; ++k) x[i][k] += delta * d[i][k] / norm;
    if (total_energy(x, s) < c.energy - tol) return false;
  }
  return true;
}

struct StabilityRow {
  int n = 0;
  double energy = 0.0;
  double stability_quotient = 0.0;  // -U_min / N
  double rmin_emp = 0.0;
  double gradient_norm = 0.0;
  bool negative_w = false;
  double wplus_max = 0.0;
  double va_at_rmin = 0.0;
  bool wplus_witness = false;  // max_i W+(i) >= V_a(rmin_emp)
  Configuration config;
};

/// Empirical minima for N = 2..n_max. `witness_potential` supplies V_a for
/// the W+ >= V_a(r_min) check (the cut-off potential of the active certificate).
inline std::vector<StabilityRow> empirical_stability(int n_max, const PotentialSpec& s, int starts,
                                                     std::uint64_t seed, const PotentialSpec& witness_potential,
                                                     const DescentOptions& opt = {},
                                                     unsigned workers = default_workers()) {
  if (n_max > kMaxClusterSize) throw std::domain_error("empirical_stability: N_max exceeds 13");
  std::vector<StabilityRow> rows;
  for (int n = 2; n <= n_max; ++n) {
    const auto m = minimize_energy(n, s, starts, seed, opt, workers);
    StabilityRow row;
    row.n = n;
    row.energy = m.best.energy;
    row.stability_quotient = -m.best.energy / n;
    row.rmin_emp = m.best.rmin_emp;
    row.gradient_norm = m.best.gradient_norm;
    row.negative_w = all_pass(check_negative_w(m.best));
    const WSplit w = w_split(m.best, witness_potential);
    row.wplus_max = *std::max_element(w.plus.begin(), w.plus.end());
    row.va_at_rmin = pair_energy(witness_potential, m.best.rmin_emp);
    row.wplus_witness = row.wplus_max >= row.va_at_rmin;
    row.config = m.best;
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Connected graphs

struct GraphSet {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // bit k of a mask is edges[k]
  std::vector<std::uint32_t> graphs;
};

namespace detail {
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};
}  // namespace detail

/// All connected graphs on vertex set {0..n-1}, by brute force over the
/// 2^{n(n-1)/2} edge subsets.
inline GraphSet enumerate_connected_graphs(int n) {
  if (n < 2 || n > kMaxGraphOrder)
    throw std::domain_error("enumerate_connected_graphs: n must be in [2, 5]");
  GraphSet gs;
  gs.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) gs.edges.emplace_back(i, j);
  const std::uint32_t total = 1u << gs.edges.size();
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    detail::UnionFind uf(n);
    int components = n;
    for (std::size_t k = 0; k < gs.edges.size(); ++k)
      if (mask & (1u << k))
        if (uf.unite(gs.edges[k].first, gs.edges[k].second)) --components;
    if (components == 1) gs.graphs.push_back(mask);
  }
  return gs;
}

// ---------------------------------------------------------------------------
// Mayer coefficients

enum class EstimateMethod { ExactQuadrature, MonteCarlo };

struct MayerCoefficientEstimate {
  int order = 0;
  double value = 0.0;
  double statistical_error = 0.0;  // one standard error; 0 for quadrature
  double truncation_error = 0.0;   // bound on the part outside the sampling ball
  double quadrature_error = 0.0;
  EstimateMethod method = EstimateMethod::ExactQuadrature;
  long samples = 0;
};

/// C_2 = (1/2) int (e^{-beta V} - 1) dx by adaptive quadrature.
inline MayerCoefficientEstimate c2_exact(double beta, const PotentialSpec& s, QuadratureSpec q = {}) {
  if (!(beta > 0.0)) throw std::domain_error("c2_exact: beta must be > 0");
  validate(s);
  if (q.split_points.empty()) q.split_points = mayer_split_points(s);
  const MayerInput in{beta, s};
  const auto r = integrate_radial(
      [&in](double r) { return 2.0 * std::numbers::pi * r * r * mayer_f(r, in); }, 0.0,
      std::numeric_limits<double>::infinity(), q);
  if (!r.converged) throw std::runtime_error("c2_exact: quadrature did not converge");
  MayerCoefficientEstimate e;
  e.order = 2;
  e.value = r.value;
  e.quadrature_error = r.error_estimate;
  e.method = EstimateMethod::ExactQuadrature;
  return e;
}

/// Same integral by a fixed-grid midpoint rule (independent second method).
inline double c2_midpoint(double beta, const PotentialSpec& s, long points = 10'000'000) {
  const MayerInput in{beta, s};
  return integrate_midpoint([&in](double r) { return 2.0 * std::numbers::pi * r * r * mayer_f(r, in); }, 0.0,
                            std::numeric_limits<double>::infinity(), points, mayer_split_points(s));
}

namespace detail {
// Mayer f for sampled pair distances, tolerant of r -> 0.
inline double sampled_f(const PotentialSpec& s, double beta, double r) {
  if (s.kind == PotentialKind::CutoffLJ) return std::expm1(-beta * pair_energy(s, r));
  return std::expm1(-beta * evaluate(s, std::max(r, 1e-6)));
}

inline Vec3 uniform_in_ball(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  for (;;) {
    const Vec3 p{u(rng), u(rng), u(rng)};
    if (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] <= radius * radius) return p;
  }
}
}  // namespace detail

/// Upper bound on |C_3 truncated - C_3| when x_2, x_3 are restricted to the
/// ball of radius R around x_1 = 0. With T(s) = int_{|x|>s} |f| and C = int |f|:
///   star terms (1/6)*2*T(R)*C*(1 + fmax), paths (1/6)*2*(T(R)*C + P(R)),
///   P(R) = int_{|y|<=R} |f(y)| T(R - |y|) dy.
inline double c3_truncation_bound(double beta, const PotentialSpec& s, double radius) {
  const auto abs_f = [beta, s](double r) { return std::abs(detail::sampled_f(s, beta, r)); };
  const auto shell = [&abs_f](double r) { return 4.0 * std::numbers::pi * r * r * abs_f(r); };
  QuadratureSpec q;
  q.abs_tol = 1e-10;
  q.rel_tol = 1e-8;
  const auto splits = mayer_split_points(s);
  const auto T = [&](double lo) {
    QuadratureSpec qq = q;
    for (double p : splits)
      if (p > lo) qq.split_points.push_back(p);
    return integrate_radial(shell, lo, std::numeric_limits<double>::infinity(), qq).value;
  };
  const double c_total = T(0.0);
  const double t_r = T(radius);
  // |f| <= max(1, e^{-beta Vmin} - 1); Vmin = -1 for the LJ family
  double vmin = -1.0;
  if (s.kind == PotentialKind::LJType) vmin = -s.c2 * std::pow(s.r0, -(3.0 + s.epsilon));
  const double fmax = std::max(1.0, std::expm1(-beta * vmin));
  QuadratureSpec qp = q;
  for (double p : splits)
    if (p < radius) qp.split_points.push_back(p);
  const double p_r = integrate_radial([&](double y) { return shell(y) * (y < radius ? T(radius - y) : 0.0); },
                                      0.0, radius, qp)
                         .value;
  return (2.0 * t_r * c_total * (1.0 + fmax) + 2.0 * (t_r * c_total + p_r)) / 6.0;
}

/// C_3 = (1/3!) int int sum over the 4 connected graphs on {1,2,3} of the
/// product of edge factors, x_1 pinned at 0 and x_2, x_3 uniform in the ball
/// of radius `cutoff_radius`. Samples are split into 64 batches with seeds
/// derived from (seed, batch) and reduced in batch order.
inline MayerCoefficientEstimate c3_monte_carlo(double beta, const PotentialSpec& s, long samples,
                                               std::uint64_t seed, double cutoff_radius = 5.0,
                                               unsigned workers = default_workers()) {
  if (samples < 10'000) throw std::domain_error("c3_monte_carlo: need at least 1e4 samples");
  if (!(beta > 0.0)) throw std::domain_error("c3_monte_carlo: beta must be > 0");
  if (!(cutoff_radius > 0.0)) throw std::domain_error("c3_monte_carlo: cutoff radius must be > 0");
  validate(s);
  constexpr std::size_t kBatches = 64;
  std::vector<double> sum(kBatches, 0.0), sumsq(kBatches, 0.0);
  std::vector<long> count(kBatches, 0);
  parallel_for(kBatches, workers, [&](std::size_t b) {
    auto rng = derived_rng(seed, b);
    const long nb = samples / static_cast<long>(kBatches) + (static_cast<long>(b) < samples % static_cast<long>(kBatches) ? 1 : 0);
    double acc = 0.0, acc2 = 0.0;
    for (long k = 0; k < nb; ++k) {
      const Vec3 x2 = detail::uniform_in_ball(rng, cutoff_radius);
      const Vec3 x3 = detail::uniform_in_ball(rng, cutoff_radius);
      const Vec3 o{0.0, 0.0, 0.0};
      const double f12 = detail::sampled_f(s, beta, distance(o, x2));
      const double f13 = detail::sampled_f(s, beta, distance(o, x3));
      const double f23 = detail::sampled_f(s, beta, distance(x2, x3));
      const double h = f12 * f13 + f12 * f23 + f13 * f23 + f12 * f13 * f23;
      acc += h;
      acc2 += h * h;
    }
    sum[b] = acc;
    sumsq[b] = acc2;
    count[b] = nb;
  });
  double total = 0.0, total2 = 0.0;
  long n = 0;
  for (std::size_t b = 0; b < kBatches; ++b) {
    total += sum[b];
    total2 += sumsq[b];
    n += count[b];
  }
  const double mean = total / static_cast<double>(n);
  const double var = std::max(0.0, total2 / static_cast<double>(n) - mean * mean);
  const double vol = 4.0 / 3.0 * std::numbers::pi * cutoff_radius * cutoff_radius * cutoff_radius;
  const double scale = vol * vol / 6.0;
  MayerCoefficientEstimate e;
  e.order = 3;
  e.value = scale * mean;
  e.statistical_error = scale * std::sqrt(var / static_cast<double>(n));
  e.truncation_error = c3_truncation_bound(beta, s, cutoff_radius);
  e.method = EstimateMethod::MonteCarlo;
  e.samples = n;
  return e;
}

}  // namespace ljmayer
