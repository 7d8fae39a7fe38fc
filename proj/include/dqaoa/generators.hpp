#pragma once

#include <cstdint>

#include "dqaoa/ising.hpp"

namespace dqaoa {

struct WeightRange {
  int lo = 1;
  int hi = 6;
};

/// Uniform random d-regular simple graph (pairing model with rejection) as a Max-Cut model:
/// minimise sum w_ij z_i z_j. Weights are 1, or uniform integers in `range` when weighted.
IsingModel gen_regular(int n, int d, bool weighted, WeightRange range, std::uint64_t seed);

/// Erdos-Renyi G(n, p) with p = avg_degree / (n - 1).
IsingModel gen_er(int n, double avg_degree, bool weighted, WeightRange range, std::uint64_t seed);

/// Erdos-Renyi with an explicit edge probability.
IsingModel gen_er_p(int n, double p, bool weighted, WeightRange range, std::uint64_t seed);

/// Cut value of a Max-Cut model: (sum w - energy) / 2.
double cut_value(const IsingModel& model, std::span<const Spin> z);

}  // namespace dqaoa
