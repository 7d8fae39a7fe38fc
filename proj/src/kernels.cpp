#include "dqaoa/kernels.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <omp.h>

#include "dqaoa/error.hpp"

namespace dqaoa::kernels {
namespace {

constexpr std::size_t kExpectationBlock = 1u << 12;
constexpr int kChunkBits = 16;
constexpr double kTieWindow = 1e-9;

void check_dims(std::size_t amps, std::size_t diag) {
  if (amps != diag)
    throw InputError("state has " + std::to_string(amps) + " amplitudes but diagonal has " + std::to_string(diag));
}

void check_diag_size(const IsingModel& model, std::size_t size) {
  if (model.size() > kSimulatorQubitCap)
    throw InputError("model has " + std::to_string(model.size()) + " spins; simulator cap is " +
                     std::to_string(kSimulatorQubitCap));
  if (size != (std::size_t{1} << model.size())) throw InputError("diagonal length must be 2^n");
}

void check_brute_force(const IsingModel& model) {
  if (model.size() > kBruteForceCap)
    throw InputError("brute force limited to " + std::to_string(kBruteForceCap) + " spins, model has " +
                     std::to_string(model.size()));
}

// Lexicographic order with -1 < +1: spin i is +1 iff bit (n-1-i) of m is set.
SpinAssignment spins_from_rank(std::uint64_t m, int n) {
  SpinAssignment z(n);
  for (int i = 0; i < n; ++i) z[i] = ((m >> (n - 1 - i)) & 1ULL) ? 1 : -1;
  return z;
}

struct Flat {
  int n = 0;
  double offset = 0.0;
  std::vector<double> lin;
  std::vector<int> ei, ej;
  std::vector<double> ew;
  // CSR adjacency for incremental updates.
  std::vector<int> start, nbr;
  std::vector<double> nw;

  explicit Flat(const IsingModel& model) : n(model.size()), offset(model.offset()), lin(model.linear_terms()) {
    for (const auto& [ij, w] : model.couplings()) {
      ei.push_back(ij.first);
      ej.push_back(ij.second);
      ew.push_back(w);
    }
    auto adj = model.adjacency();
    start.assign(n + 1, 0);
    for (int k = 0; k < n; ++k) start[k + 1] = start[k] + static_cast<int>(adj[k].size());
    for (const auto& a : adj)
      for (const auto& [v, w] : a) {
        nbr.push_back(v);
        nw.push_back(w);
      }
  }

  // Same summation order as energy().
  double energy_at(const double* z) const {
    double e = offset;
    for (int k = 0; k < n; ++k) e += lin[k] * z[k];
    for (std::size_t t = 0; t < ew.size(); ++t) e += ew[t] * z[ei[t]] * z[ej[t]];
    return e;
  }

  double basis_energy(std::uint64_t b, std::vector<double>& z) const {
    for (int k = 0; k < n; ++k) z[k] = ((b >> k) & 1ULL) ? -1.0 : 1.0;
    return energy_at(z.data());
  }

  double rank_energy(std::uint64_t m, std::vector<double>& z) const {
    for (int i = 0; i < n; ++i) z[i] = ((m >> (n - 1 - i)) & 1ULL) ? 1.0 : -1.0;
    return energy_at(z.data());
  }
};

}  // namespace

namespace serial {

void hamiltonian_diagonal(const IsingModel& model, std::span<double> diag) {
  check_diag_size(model, diag.size());
  for (std::uint64_t b = 0; b < diag.size(); ++b) diag[b] = energy(model, spins_from_basis(b, model.size()));
}

void apply_phase(std::span<Amplitude> amps, double gamma, std::span<const double> diag) {
  check_dims(amps.size(), diag.size());
  for (std::size_t b = 0; b < amps.size(); ++b) amps[b] *= std::polar(1.0, -gamma * diag[b]);
}

void apply_mixer(std::span<Amplitude> amps, int num_qubits, double beta) {
  if (amps.size() != (std::size_t{1} << num_qubits)) throw InputError("state length must be 2^num_qubits");
  const double c = std::cos(beta), s = std::sin(beta);
  const Amplitude mis(0.0, -s);
  for (int k = 0; k < num_qubits; ++k) {
    const std::size_t stride = std::size_t{1} << k;
    for (std::size_t b = 0; b < amps.size(); ++b) {
      if (b & stride) continue;
      const Amplitude a0 = amps[b], a1 = amps[b | stride];
      amps[b] = c * a0 + mis * a1;
      amps[b | stride] = mis * a0 + c * a1;
    }
  }
}

double expectation(std::span<const Amplitude> amps, std::span<const double> diag) {
  check_dims(amps.size(), diag.size());
  double sum = 0.0;
  for (std::size_t b = 0; b < amps.size(); ++b) sum += std::norm(amps[b]) * diag[b];
  return sum;
}

GroundState brute_force_min(const IsingModel& model) {
  check_brute_force(model);
  const int n = model.size();
  GroundState best{spins_from_rank(0, n), std::numeric_limits<double>::infinity()};
  std::uint64_t best_m = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t m = 0; m < total; ++m) {
    const double e = energy(model, spins_from_rank(m, n));
    if (e < best.value) {
      best.value = e;
      best_m = m;
    }
  }
  best.z = spins_from_rank(best_m, n);
  return best;
}

}  // namespace serial

namespace omp {

void hamiltonian_diagonal(const IsingModel& model, std::span<double> diag) {
  check_diag_size(model, diag.size());
  const Flat flat(model);
  const auto size = static_cast<std::int64_t>(diag.size());
#pragma omp parallel
  {
    std::vector<double> z(flat.n);
#pragma omp for schedule(static)
    for (std::int64_t b = 0; b < size; ++b) diag[b] = flat.basis_energy(static_cast<std::uint64_t>(b), z);
  }
}

void apply_phase(std::span<Amplitude> amps, double gamma, std::span<const double> diag) {
  check_dims(amps.size(), diag.size());
  const auto size = static_cast<std::int64_t>(amps.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < size; ++b) amps[b] *= std::polar(1.0, -gamma * diag[b]);
}

void apply_mixer(std::span<Amplitude> amps, int num_qubits, double beta) {
  if (amps.size() != (std::size_t{1} << num_qubits)) throw InputError("state length must be 2^num_qubits");
  const double c = std::cos(beta), s = std::sin(beta);
  const auto pairs = static_cast<std::int64_t>(amps.size() / 2);
  for (int k = 0; k < num_qubits; ++k) {
    const std::uint64_t low = (std::uint64_t{1} << k) - 1;
    const std::uint64_t stride = std::uint64_t{1} << k;
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < pairs; ++t) {
      const auto u = static_cast<std::uint64_t>(t);
      const std::uint64_t b = ((u & ~low) << 1) | (u & low);
      const double x0 = amps[b].real(), y0 = amps[b].imag();
      const double x1 = amps[b | stride].real(), y1 = amps[b | stride].imag();
      amps[b] = {c * x0 + s * y1, c * y0 - s * x1};
      amps[b | stride] = {s * y0 + c * x1, c * y1 - s * x0};
    }
  }
}

double expectation(std::span<const Amplitude> amps, std::span<const double> diag) {
  check_dims(amps.size(), diag.size());
  const std::size_t blocks = (amps.size() + kExpectationBlock - 1) / kExpectationBlock;
  std::vector<double> partial(blocks, 0.0);
  const auto nblocks = static_cast<std::int64_t>(blocks);
#pragma omp parallel for schedule(static)
  for (std::int64_t blk = 0; blk < nblocks; ++blk) {
    const std::size_t lo = static_cast<std::size_t>(blk) * kExpectationBlock;
    const std::size_t hi = std::min(amps.size(), lo + kExpectationBlock);
    double s = 0.0;
    for (std::size_t b = lo; b < hi; ++b) s += std::norm(amps[b]) * diag[b];
    partial[blk] = s;
  }
  double sum = 0.0;
  for (double p : partial) sum += p;
  return sum;
}

GroundState brute_force_min(const IsingModel& model) {
  check_brute_force(model);
  const int n = model.size();
  if (n == 0) return {{}, model.offset()};
  const Flat flat(model);
  const int low_bits = std::min(n, kChunkBits);
  const std::uint64_t chunk_size = std::uint64_t{1} << low_bits;
  const auto chunks = static_cast<std::int64_t>(std::uint64_t{1} << (n - low_bits));

  struct Best {
    std::uint64_t m = 0;
    double exact = std::numeric_limits<double>::infinity();
  };
  std::vector<Best> per_chunk(chunks);

#pragma omp parallel
  {
    std::vector<double> z(n), scratch(n);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
      const std::uint64_t base = static_cast<std::uint64_t>(c) << low_bits;
      double e = flat.rank_energy(base, z);
      Best best{base, e};
      double best_approx = e;
      std::uint64_t gray = 0;
      for (std::uint64_t t = 1; t < chunk_size; ++t) {
        const int bit = std::countr_zero(t);
        gray ^= std::uint64_t{1} << bit;
        const int k = n - 1 - bit;
        double field = flat.lin[k];
        for (int p = flat.start[k]; p < flat.start[k + 1]; ++p) field += flat.nw[p] * z[flat.nbr[p]];
        e -= 2.0 * z[k] * field;
        z[k] = -z[k];
        if (e > best_approx + kTieWindow) continue;
        const std::uint64_t m = base | gray;
        if (e < best_approx - kTieWindow) {
          best = {m, flat.rank_energy(m, scratch)};
          best_approx = e;
          continue;
        }
        const double exact = flat.rank_energy(m, scratch);
        if (exact < best.exact || (exact == best.exact && m < best.m)) best = {m, exact};
        best_approx = std::min(best_approx, e);
      }
      per_chunk[c] = best;
    }
  }

  Best best = per_chunk[0];
  for (const auto& b : per_chunk)
    if (b.exact < best.exact || (b.exact == best.exact && b.m < best.m)) best = b;
  return {spins_from_rank(best.m, n), best.exact};
}

}  // namespace omp
}  // namespace dqaoa::kernels
