#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dqaoa/ising.hpp"
#include "dqaoa/kernels.hpp"

namespace dqaoa {

using Statevector = std::vector<Amplitude>;

enum class Decode { BestOfShots, ArgmaxProb };

struct QaoaConfig {
  int p = 1;
  /// Objective evaluations per optimiser restart.
  int iterations = 20;
  /// 0 skips optimisation and uses gamma = beta = 0.
  int restarts = 5;
  int shots = 1024;
  std::uint64_t seed = 0;
  Decode decode = Decode::BestOfShots;
  int top_k = 8;

  void validate() const;
};

/// gamma in [0, pi), beta in [0, 2 pi).
struct QaoaParams {
  std::vector<double> gamma;
  std::vector<double> beta;

  static QaoaParams zeros(int p);
  /// Wrap every angle into its principal range.
  void reduce();
};

struct BasisProbability {
  std::uint64_t basis = 0;
  double probability = 0.0;
};

struct QaoaResult {
  QaoaParams params;
  double expectation = 0.0;
  SpinAssignment best_bitstring;
  double best_energy = 0.0;
  /// Most likely basis states, descending probability (ties by lower index).
  std::vector<BasisProbability> top;
  int evaluations = 0;
};

std::vector<double> hamiltonian_diagonal(const IsingModel& model);
Statevector uniform_state(int num_qubits);
void apply_phase(Statevector& state, double gamma, const std::vector<double>& diag);
void apply_mixer(Statevector& state, double beta);
double expectation(const Statevector& state, const std::vector<double>& diag);
double norm_squared(const Statevector& state);

/// U_B(beta_p) U_C(gamma_p) ... U_B(beta_1) U_C(gamma_1) |+>^n.
Statevector ansatz_state(const std::vector<double>& diag, const QaoaParams& params);

struct Sample {
  SpinAssignment z;
  double energy = 0.0;
};

/// Decode a state into one assignment per `config.decode`; `rng` drives the shots.
Sample sample_decode(const Statevector& state, const IsingModel& model, const QaoaConfig& config,
                     std::mt19937_64& rng);

/// Seeded Nelder-Mead restarts over the 2p angles, then decode. Deterministic given the seed.
QaoaResult optimize(const IsingModel& model, const QaoaConfig& config);

}  // namespace dqaoa
