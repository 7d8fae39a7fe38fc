#pragma once

#include <complex>
#include <span>

#include "dqaoa/ising.hpp"

namespace dqaoa {

using Amplitude = std::complex<double>;

inline constexpr int kSimulatorQubitCap = 20;

/// Hot loops of the simulator and the exhaustive oracle.
///
/// `serial` is the straightforward reference used by tests; `omp` is the production path.
/// Both produce bit-identical diagonals, phases and mixers. `omp::expectation` sums in
/// fixed-size blocks, so its result does not depend on the thread count.
namespace kernels {

namespace serial {
/// diag[b] = energy(model, spins_from_basis(b, n)); diag.size() must be 2^n.
void hamiltonian_diagonal(const IsingModel& model, std::span<double> diag);
void apply_phase(std::span<Amplitude> amps, double gamma, std::span<const double> diag);
void apply_mixer(std::span<Amplitude> amps, int num_qubits, double beta);
double expectation(std::span<const Amplitude> amps, std::span<const double> diag);
/// Direct evaluation of every assignment.
GroundState brute_force_min(const IsingModel& model);
}  // namespace serial

namespace omp {
void hamiltonian_diagonal(const IsingModel& model, std::span<double> diag);
void apply_phase(std::span<Amplitude> amps, double gamma, std::span<const double> diag);
void apply_mixer(std::span<Amplitude> amps, int num_qubits, double beta);
double expectation(std::span<const Amplitude> amps, std::span<const double> diag);
/// Chunked Gray-code enumeration; near-ties are re-evaluated exactly.
GroundState brute_force_min(const IsingModel& model);
}  // namespace omp

}  // namespace kernels
}  // namespace dqaoa
