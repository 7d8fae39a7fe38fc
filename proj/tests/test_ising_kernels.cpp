#include <gtest/gtest.h>

#include <omp.h>

#include <random>

#include "dqaoa/error.hpp"
#include "dqaoa/kernels.hpp"
#include "dqaoa/qaoa.hpp"
#include "oracles.hpp"

using namespace dqaoa;

TEST(Ising, EnergyMatchesDefinition) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const auto m = oracle::random_ising(rng, 7, 0.5, 5, 0.5);
    for (std::uint64_t s = 0; s < 128; ++s) {
      const auto z = oracle::spins_of(s, 7);
      EXPECT_DOUBLE_EQ(energy(m, z), oracle::ising_value(m, z));
    }
  }
  IsingModel m(2);
  EXPECT_THROW(energy(m, SpinAssignment{1}), InputError);
  EXPECT_THROW(m.add_coupling(1, 1, 1.0), InputError);
}

TEST(Ising, CancelledCouplingIsDropped) {
  IsingModel m(2);
  m.add_coupling(0, 1, 1.5);
  m.add_coupling(1, 0, -1.5);
  EXPECT_TRUE(m.couplings().empty());
}

TEST(Ising, BruteForceMatchesOracleAndSerial) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    const auto m = oracle::random_ising(rng, 2 + t % 10, 0.4, 5, 0.5);
    const auto a = kernels::omp::brute_force_min(m);
    const auto b = kernels::serial::brute_force_min(m);
    EXPECT_EQ(a.value, oracle::ising_min(m));
    EXPECT_EQ(a.z, b.z);
    EXPECT_EQ(energy(m, a.z), a.value);
  }
}

TEST(Ising, BruteForceTieGoesToLexicographicallySmallest) {
  // Two degenerate ground states of a single antiferromagnetic bond.
  IsingModel m(2);
  m.add_coupling(0, 1, 1);
  EXPECT_EQ(brute_force_min(m).z, (SpinAssignment{-1, 1}));
}

TEST(Ising, SubModelEnergyDecomposes) {
  std::mt19937_64 rng(3);
  const auto m = oracle::random_ising(rng, 8, 0.5, 4, 0.6);
  const std::vector<int> interior{1, 3, 4, 6};
  PartialSpins fix(8, 0);
  std::vector<int> exterior{0, 2, 5, 7};
  for (int k : exterior) fix[k] = (k % 3 == 0) ? 1 : -1;
  const auto sub = induced_submodel(m, interior, fix);
  const auto wb = sub.with_boundary();
  double first = 0.0;
  for (std::uint64_t s = 0; s < 16; ++s) {
    const auto local = oracle::spins_of(s, 4);
    SpinAssignment full(fix.begin(), fix.end());
    for (int t = 0; t < 4; ++t) full[interior[t]] = local[t];
    const double diff = oracle::ising_value(m, full) - sub.energy(local);
    if (s == 0) first = diff;
    EXPECT_NEAR(diff, first, 1e-12);
    EXPECT_NEAR(energy(wb, local), sub.energy(local), 1e-12);
  }
  PartialSpins open(8, 0);
  EXPECT_THROW(induced_submodel(m, interior, open), InputError);
}

TEST(Ising, GraphFormatRoundTrip) {
  std::mt19937_64 rng(4);
  const auto m = oracle::random_ising(rng, 6, 0.5, 5, 0.5);
  EXPECT_EQ(parse_graph(format_graph(m)).couplings(), m.couplings());
  EXPECT_EQ(parse_graph(format_graph(m)).linear_terms(), m.linear_terms());
  EXPECT_THROW(parse_graph("n 2\nq 0 0 1\n"), ParseError);
  EXPECT_THROW(parse_graph("n 2\nq 0 x 1\n"), ParseError);
}

TEST(Ising, BasisConvention) {
  // Qubit k is bit k and |0> is z = +1.
  EXPECT_EQ(spins_from_basis(0b101, 3), (SpinAssignment{-1, 1, -1}));
  EXPECT_EQ(basis_from_spins(SpinAssignment{-1, 1, -1}), 0b101u);
}

TEST(Kernels, SerialAndParallelAgree) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {1, 3, 8, 13}) {
    const auto m = oracle::random_ising(rng, n, 0.4, 5, 0.5);
    const std::size_t d = std::size_t{1} << n;
    std::vector<double> d1(d), d2(d);
    kernels::serial::hamiltonian_diagonal(m, d1);
    kernels::omp::hamiltonian_diagonal(m, d2);
    EXPECT_EQ(d1, d2);
    for (std::size_t b = 0; b < d; b += 97) EXPECT_DOUBLE_EQ(d1[b], energy(m, spins_from_basis(b, n)));

    std::vector<Amplitude> a1(d), a2;
    for (auto& a : a1) a = {u(rng), u(rng)};
    a2 = a1;
    kernels::serial::apply_phase(a1, 0.3, d1);
    kernels::omp::apply_phase(a2, 0.3, d2);
    kernels::serial::apply_mixer(a1, n, 0.7);
    kernels::omp::apply_mixer(a2, n, 0.7);
    for (std::size_t b = 0; b < d; ++b) EXPECT_LE(std::abs(a1[b] - a2[b]), 1e-14);
    EXPECT_NEAR(kernels::serial::expectation(a1, d1), kernels::omp::expectation(a2, d2), 1e-9);
  }
}

TEST(Kernels, ExpectationIndependentOfThreadCount) {
  std::mt19937_64 rng(6);
  const auto m = oracle::random_ising(rng, 14, 0.2, 5, 0.5);
  const auto diag = hamiltonian_diagonal(m);
  QaoaParams p{{0.4}, {0.9}};
  const auto s = ansatz_state(diag, p);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double one = kernels::omp::expectation(s, diag);
  omp_set_num_threads(3);
  const double three = kernels::omp::expectation(s, diag);
  omp_set_num_threads(saved);
  EXPECT_EQ(one, three);
}
