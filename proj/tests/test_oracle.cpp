#include "ljmayer/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace ljmayer;

namespace {

// Connected labelled graphs: c_n = 2^{C(n,2)} - sum_{k<n} C(n-1,k-1) c_k 2^{C(n-k,2)}.
long connected_count_recurrence(int n) {
  std::vector<long> c(n + 1, 0);
  auto binom = [](int a, int b) {
    long r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  for (int m = 1; m <= n; ++m) {
    long total = 1L << (m * (m - 1) / 2);
    for (int k = 1; k < m; ++k) total -= binom(m - 1, k - 1) * c[k] * (1L << ((m - k) * (m - k - 1) / 2));
    c[m] = total;
  }
  return c[n];
}

}  // namespace

TEST(Graphs, ConnectedCountsMatchRecurrence) {
  for (int n = 2; n <= kMaxGraphOrder; ++n)
    EXPECT_EQ(static_cast<long>(enumerate_connected_graphs(n).graphs.size()), connected_count_recurrence(n)) << n;
  EXPECT_EQ(enumerate_connected_graphs(4).graphs.size(), 38u);
  EXPECT_EQ(enumerate_connected_graphs(5).graphs.size(), 728u);
  EXPECT_THROW(enumerate_connected_graphs(6), std::domain_error);
}

TEST(Descent, DimerReachesUnitDistance) {
  const auto r = local_descent({{0, 0, 0}, {1.3, 0.2, 0}}, PotentialSpec::lennard_jones());
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.energy, -1.0, 1e-12);
  EXPECT_NEAR(distance(r.x[0], r.x[1]), 1.0, 1e-8);
}

TEST(Minimize, SmallClusterGlobalMinima) {
  const auto lj = PotentialSpec::lennard_jones();
  EXPECT_NEAR(minimize_energy(3, lj, 10, 1).best.energy, -3.0, 1e-9);
  EXPECT_NEAR(minimize_energy(4, lj, 10, 1).best.energy, -6.0, 1e-9);
  // known global minimum of LJ5 in these units: -9.103852 (trigonal bipyramid)
  EXPECT_NEAR(minimize_energy(5, lj, 30, 1).best.energy, -9.103852, 1e-5);
}

TEST(Minimize, SeedDeterminism) {
  const auto lj = PotentialSpec::lennard_jones();
  const auto a = minimize_energy(6, lj, 8, 99);
  const auto b = minimize_energy(6, lj, 8, 99);
  EXPECT_EQ(a.start_energies, b.start_energies);
  EXPECT_EQ(a.best.positions, b.best.positions);
}

TEST(Minimize, WorkerCountIndependence) {
  const auto lj = PotentialSpec::lennard_jones();
  const auto one = minimize_energy(6, lj, 8, 5, {}, 1);
  const auto four = minimize_energy(6, lj, 8, 5, {}, 4);
  EXPECT_EQ(one.start_energies, four.start_energies);
  EXPECT_EQ(one.best_start, four.best_start);
}

TEST(Minimize, RejectsOversizedCluster) {
  EXPECT_THROW(minimize_energy(14, PotentialSpec::lennard_jones(), 1, 0), std::domain_error);
  EXPECT_THROW(minimize_energy(1, PotentialSpec::lennard_jones(), 1, 0), std::domain_error);
}

TEST(Minimize, MinimaPassNegativeWCheckAndProbe) {
  const auto lj = PotentialSpec::lennard_jones();
  const auto m = minimize_energy(7, lj, 10, 2);
  EXPECT_TRUE(all_pass(check_negative_w(m.best)));
  EXPECT_TRUE(local_minimality_probe(m.best, lj));
  const auto w = w_split(m.best, lj);
  for (std::size_t i = 0; i < w.plus.size(); ++i) {
    EXPECT_GE(w.plus[i], 0.0);
    EXPECT_LE(w.minus[i], 0.0);
    EXPECT_NEAR(w.plus[i] + w.minus[i], m.best.per_particle_w[i], 1e-12);
  }
}

TEST(Minimize, PositiveWDetected) {
  // a particle squeezed close to another has W > 0
  const auto c = make_configuration({{0, 0, 0}, {0.8, 0, 0}, {5, 0, 0}}, PotentialSpec::lennard_jones());
  EXPECT_FALSE(all_pass(check_negative_w(c)));
}

TEST(Stability, CutoffAndLJAgree) {
  const auto lj = PotentialSpec::lennard_jones();
  const auto co = PotentialSpec::cutoff(0.3637);
  const auto a = empirical_stability(6, lj, 10, 3, co);
  const auto b = empirical_stability(6, co, 10, 3, co);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_DOUBLE_EQ(a[i].energy, b[i].energy);
    EXPECT_LT(a[i].stability_quotient, 41.66);
    EXPECT_TRUE(a[i].wplus_witness);
  }
}

TEST(Xyz, OneLinePerParticle) {
  const auto c = make_configuration({{0, 0, 0}, {1, 0, 0}}, PotentialSpec::lennard_jones());
  std::ostringstream os;
  write_xyz(os, c);
  EXPECT_EQ(os.str(), "0.000000000000 0.000000000000 0.000000000000\n1.000000000000 0.000000000000 0.000000000000\n");
}

TEST(Mayer, C2Reference) {
  const auto lj = PotentialSpec::lennard_jones();
  EXPECT_NEAR(c2_exact(1.0, lj).value, 3.758799421597108, 1e-8);
  EXPECT_NEAR(c2_exact(0.5, lj).value, 0.929488561376448872, 1e-8);
  EXPECT_NEAR(c2_midpoint(1.0, lj, 2'000'000), 3.758799421597108, 1e-5);
}

TEST(Mayer, C3MonteCarloDeterministicAndPlausible) {
  const auto lj = PotentialSpec::lennard_jones();
  const auto a = c3_monte_carlo(1.0, lj, 200'000, 11, 5.0, 1);
  const auto b = c3_monte_carlo(1.0, lj, 200'000, 11, 5.0, 3);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.statistical_error, b.statistical_error);
  // 1e7-sample reference: 26.56 +- 0.66
  EXPECT_NEAR(a.value, 26.56, 5.0 * a.statistical_error + a.truncation_error + 1.0);
  EXPECT_GT(a.truncation_error, 0.0);
  EXPECT_THROW(c3_monte_carlo(1.0, lj, 100, 0), std::domain_error);
}

TEST(Mayer, TruncationBoundShrinksWithRadius) {
  const auto lj = PotentialSpec::lennard_jones();
  EXPECT_GT(c3_truncation_bound(1.0, lj, 3.0), c3_truncation_bound(1.0, lj, 5.0));
  EXPECT_GT(c3_truncation_bound(1.0, lj, 5.0), c3_truncation_bound(1.0, lj, 10.0));
}
