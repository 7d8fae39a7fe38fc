#include "dqaoa/qaoa.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "dqaoa/error.hpp"
#include "dqaoa/nelder_mead.hpp"

namespace dqaoa {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double a, double period) {
  double r = std::fmod(a, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

int qubits_of(std::size_t size) {
  if (size == 0 || !std::has_single_bit(size)) throw InputError("state length must be a power of two");
  return std::countr_zero(size);
}

}  // namespace

void QaoaConfig::validate() const {
  if (p < 1) throw InputError("p must be at least 1");
  if (iterations < 1) throw InputError("iterations must be at least 1");
  if (restarts < 0) throw InputError("restarts must be non-negative");
  if (shots < 1) throw InputError("shots must be at least 1");
  if (top_k < 0) throw InputError("top_k must be non-negative");
}

QaoaParams QaoaParams::zeros(int p) { return {std::vector<double>(p, 0.0), std::vector<double>(p, 0.0)}; }

void QaoaParams::reduce() {
  for (auto& g : gamma) g = wrap(g, kPi);
  for (auto& b : beta) b = wrap(b, 2.0 * kPi);
}

std::vector<double> hamiltonian_diagonal(const IsingModel& model) {
  if (model.size() > kSimulatorQubitCap)
    throw InputError("model has " + std::to_string(model.size()) + " spins; simulator cap is " +
                     std::to_string(kSimulatorQubitCap));
  std::vector<double> diag(std::size_t{1} << model.size());
  kernels::omp::hamiltonian_diagonal(model, diag);
  return diag;
}

Statevector uniform_state(int num_qubits) {
  if (num_qubits < 0 || num_qubits > kSimulatorQubitCap) throw InputError("qubit count outside simulator range");
  const std::size_t size = std::size_t{1} << num_qubits;
  return Statevector(size, Amplitude(1.0 / std::sqrt(static_cast<double>(size)), 0.0));
}

void apply_phase(Statevector& state, double gamma, const std::vector<double>& diag) {
  kernels::omp::apply_phase(state, gamma, diag);
}

void apply_mixer(Statevector& state, double beta) { kernels::omp::apply_mixer(state, qubits_of(state.size()), beta); }

double expectation(const Statevector& state, const std::vector<double>& diag) {
  return kernels::omp::expectation(state, diag);
}

double norm_squared(const Statevector& state) {
  double s = 0.0;
  for (const auto& a : state) s += std::norm(a);
  return s;
}

Statevector ansatz_state(const std::vector<double>& diag, const QaoaParams& params) {
  if (params.gamma.size() != params.beta.size()) throw InputError("gamma and beta must have the same length");
  Statevector state = uniform_state(qubits_of(diag.size()));
  for (std::size_t layer = 0; layer < params.gamma.size(); ++layer) {
    apply_phase(state, params.gamma[layer], diag);
    apply_mixer(state, params.beta[layer]);
  }
  return state;
}

Sample sample_decode(const Statevector& state, const IsingModel& model, const QaoaConfig& config,
                     std::mt19937_64& rng) {
  const int n = qubits_of(state.size());
  if (n != model.size()) throw InputError("state and model sizes differ");
  std::uint64_t chosen = 0;
  if (config.decode == Decode::ArgmaxProb) {
    double best = -1.0;
    for (std::size_t b = 0; b < state.size(); ++b)
      if (std::norm(state[b]) > best) {
        best = std::norm(state[b]);
        chosen = b;
      }
  } else {
    std::vector<double> cdf(state.size());
    double acc = 0.0;
    for (std::size_t b = 0; b < state.size(); ++b) {
      acc += std::norm(state[b]);
      cdf[b] = acc;
    }
    std::uniform_real_distribution<double> u(0.0, acc);
    double best_energy = std::numeric_limits<double>::infinity();
    for (int s = 0; s < config.shots; ++s) {
      const double r = u(rng);
      auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
      auto b = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1));
      // Skip zero-probability states a rounding edge could land on.
      while (b > 0 && std::norm(state[b]) == 0.0 && cdf[b] == cdf[b - 1]) --b;
      const double e = energy(model, spins_from_basis(b, n));
      if (e < best_energy || (e == best_energy && b < chosen)) {
        best_energy = e;
        chosen = b;
      }
    }
  }
  Sample out;
  out.z = spins_from_basis(chosen, n);
  out.energy = energy(model, out.z);
  return out;
}

QaoaResult optimize(const IsingModel& model, const QaoaConfig& config) {
  config.validate();
  QaoaResult res;
  if (model.size() == 0) {
    res.params = QaoaParams::zeros(config.p);
    res.expectation = model.offset();
    res.best_energy = model.offset();
    res.top.push_back({0, 1.0});
    return res;
  }
  const auto diag = hamiltonian_diagonal(model);
  const int p = config.p;
  std::mt19937_64 rng(config.seed);

  auto unpack = [p](std::span<const double> x) {
    QaoaParams params{std::vector<double>(x.begin(), x.begin() + p), std::vector<double>(x.begin() + p, x.end())};
    params.reduce();
    return params;
  };
  auto objective = [&](std::span<const double> x) { return expectation(ansatz_state(diag, unpack(x)), diag); };

  res.params = QaoaParams::zeros(p);
  res.expectation = objective(std::vector<double>(2 * p, 0.0));
  res.evaluations = 1;
  if (config.restarts > 0) res.expectation = std::numeric_limits<double>::infinity();

  std::uniform_real_distribution<double> ug(0.0, kPi), ub(0.0, 2.0 * kPi);
  std::vector<double> step(2 * p);
  for (int k = 0; k < p; ++k) {
    step[k] = kPi / 8.0;
    step[p + k] = kPi / 4.0;
  }
  for (int r = 0; r < config.restarts; ++r) {
    std::vector<double> x0(2 * p);
    for (int k = 0; k < p; ++k) x0[k] = ug(rng);
    for (int k = 0; k < p; ++k) x0[p + k] = ub(rng);
    auto nm = nelder_mead(objective, x0, step, config.iterations);
    res.evaluations += nm.evaluations;
    if (nm.value < res.expectation) {
      res.expectation = nm.value;
      res.params = unpack(nm.x);
    }
  }

  const Statevector state = ansatz_state(diag, res.params);
  Sample s = sample_decode(state, model, config, rng);
  res.best_bitstring = std::move(s.z);
  res.best_energy = s.energy;

  std::vector<std::uint64_t> idx(state.size());
  std::iota(idx.begin(), idx.end(), 0);
  const std::size_t k = std::min<std::size_t>(config.top_k, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&](std::uint64_t a, std::uint64_t b) {
    const double pa = std::norm(state[a]), pb = std::norm(state[b]);
    return pa != pb ? pa > pb : a < b;
  });
  for (std::size_t t = 0; t < k; ++t) res.top.push_back({idx[t], std::norm(state[idx[t]])});
  return res;
}

}  // namespace dqaoa
