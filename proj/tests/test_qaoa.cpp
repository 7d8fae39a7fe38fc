#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dqaoa/error.hpp"
#include "dqaoa/nelder_mead.hpp"
#include "dqaoa/qaoa.hpp"
#include "oracles.hpp"

using namespace dqaoa;

namespace {

// Dense-matrix evolution of |+>^n through p layers.
std::vector<oracle::cd> dense_ansatz(const IsingModel& m, const QaoaParams& params) {
  const int n = m.size();
  const std::size_t d = std::size_t{1} << n;
  std::vector<oracle::cd> v(d, 1.0 / std::sqrt(static_cast<double>(d)));
  const auto h = oracle::cost_matrix(m);
  const auto b = oracle::mixer_matrix(n);
  for (std::size_t l = 0; l < params.gamma.size(); ++l) {
    auto mh = h, mb = b;
    for (auto& row : mh)
      for (auto& x : row) x *= oracle::cd(0.0, -params.gamma[l]);
    for (auto& row : mb)
      for (auto& x : row) x *= oracle::cd(0.0, -params.beta[l]);
    v = oracle::apply(oracle::expm(mh), v);
    v = oracle::apply(oracle::expm(mb), v);
  }
  return v;
}

}  // namespace

TEST(Qaoa, AnsatzMatchesDenseOracle) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  double worst = 0.0;
  for (int t = 0; t < 30; ++t) {
    const int n = 1 + t % 3;
    const auto m = oracle::random_ising(rng, n, 0.7, 3, 0.7);
    QaoaParams p;
    for (int l = 0; l < 1 + t % 2; ++l) {
      p.gamma.push_back(ang(rng));
      p.beta.push_back(ang(rng));
    }
    const auto s = ansatz_state(hamiltonian_diagonal(m), p);
    const auto ref = dense_ansatz(m, p);
    for (std::size_t b = 0; b < s.size(); ++b) worst = std::max(worst, std::abs(s[b] - ref[b]));
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(Qaoa, SingleQubitMixerClosedForm) {
  // exp(-i beta X)|0> = cos(beta)|0> - i sin(beta)|1>.
  Statevector s{1.0, 0.0};
  apply_mixer(s, 0.3);
  EXPECT_NEAR(s[0].real(), std::cos(0.3), 1e-15);
  EXPECT_NEAR(s[1].imag(), -std::sin(0.3), 1e-15);
}

TEST(Qaoa, NormPreservedOverManyLayers) {
  std::mt19937_64 rng(22);
  const auto m = oracle::random_ising(rng, 8, 0.4, 5, 0.5);
  const auto diag = hamiltonian_diagonal(m);
  auto s = uniform_state(8);
  for (int l = 0; l < 100; ++l) {
    apply_phase(s, 0.1 * l, diag);
    apply_mixer(s, 0.05 * l);
  }
  EXPECT_NEAR(norm_squared(s), 1.0, 1e-10);
}

TEST(Qaoa, UniformExpectationIsDiagonalMean) {
  std::mt19937_64 rng(23);
  const auto m = oracle::random_ising(rng, 10, 0.3, 5, 0.5);
  const auto diag = hamiltonian_diagonal(m);
  double mean = 0.0;
  for (double x : diag) mean += x;
  mean /= static_cast<double>(diag.size());
  EXPECT_NEAR(expectation(uniform_state(10), diag), mean, 1e-12);
  // Mean energy of a model is its offset.
  EXPECT_NEAR(mean, m.offset(), 1e-9);
}

TEST(Qaoa, ParamsReduceIntoPrincipalRange) {
  QaoaParams p{{-0.5, 7.0}, {-1.0, 13.0}};
  p.reduce();
  for (double g : p.gamma) {
    EXPECT_GE(g, 0.0);
    EXPECT_LT(g, std::numbers::pi);
  }
  for (double b : p.beta) {
    EXPECT_GE(b, 0.0);
    EXPECT_LT(b, 2 * std::numbers::pi);
  }
}

TEST(Qaoa, OptimizeIsDeterministicAndFindsSmallOptimum) {
  std::mt19937_64 rng(24);
  const auto m = oracle::random_ising(rng, 6, 0.6, 5, 0.4);
  QaoaConfig c;
  c.seed = 99;
  const auto a = optimize(m, c);
  const auto b = optimize(m, c);
  EXPECT_EQ(a.best_bitstring, b.best_bitstring);
  EXPECT_EQ(a.expectation, b.expectation);
  EXPECT_EQ(a.best_energy, energy(m, a.best_bitstring));
  // 1024 shots over 64 states.
  EXPECT_EQ(a.best_energy, oracle::ising_min(m));
  EXPECT_GE(a.expectation, oracle::ising_min(m) - 1e-9);
}

TEST(Qaoa, ZeroRestartsUsesZeroAngles) {
  IsingModel m(3);
  m.add_coupling(0, 1, 1);
  QaoaConfig c;
  c.restarts = 0;
  const auto r = optimize(m, c);
  EXPECT_EQ(r.params.gamma, std::vector<double>{0.0});
  EXPECT_NEAR(r.expectation, 0.0, 1e-12);
}

TEST(Qaoa, ArgmaxDecodeReturnsMostLikelyState) {
  IsingModel m(2);
  m.add_linear(0, 1);
  m.add_linear(1, -1);
  QaoaConfig c;
  c.decode = Decode::ArgmaxProb;
  c.p = 2;
  c.iterations = 80;
  const auto r = optimize(m, c);
  ASSERT_FALSE(r.top.empty());
  EXPECT_EQ(r.best_bitstring, spins_from_basis(r.top.front().basis, 2));
}

TEST(Qaoa, RejectsInvalidConfig) {
  QaoaConfig c;
  c.p = 0;
  EXPECT_THROW(c.validate(), InputError);
  c = {};
  c.shots = 0;
  EXPECT_THROW(c.validate(), InputError);
}

TEST(NelderMead, MinimisesQuadraticWithinBudget) {
  int calls = 0;
  auto f = [&](std::span<const double> x) {
    ++calls;
    return (x[0] - 1.0) * (x[0] - 1.0) + 2.0 * (x[1] + 0.5) * (x[1] + 0.5);
  };
  const std::vector<double> x0{0.0, 0.0}, step{0.5, 0.5};
  const auto r = nelder_mead(f, x0, step, 300);
  EXPECT_LE(r.evaluations, 300);
  EXPECT_EQ(calls, r.evaluations);
  EXPECT_NEAR(r.x[0], 1.0, 1e-4);
  EXPECT_NEAR(r.x[1], -0.5, 1e-4);
}
