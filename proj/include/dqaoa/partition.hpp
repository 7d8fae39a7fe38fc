#pragma once

#include <cstdint>
#include <vector>

#include "dqaoa/ising.hpp"

namespace dqaoa {

struct Partition {
  std::vector<int> community_of;
  /// Sorted member lists; ids are dense and ordered by smallest member.
  std::vector<std::vector<int>> communities;
  int q_cap = 0;

  /// Build from arbitrary labels, renumbering densely.
  static Partition from_labels(const std::vector<int>& labels, int q_cap);

  int size() const { return static_cast<int>(communities.size()); }
  /// Throws InputError unless the partition covers 0..n-1 disjointly within the cap.
  void validate(int n) const;
};

/// Modularity with edge weights |w_ij|; 0 for a graph without edges.
double modularity(const IsingModel& model, const Partition& partition);

/// Gain of moving isolated node `i` (a singleton in `partition`) into community `target`.
double modularity_gain(const IsingModel& model, const Partition& partition, int i, int target);

/// Two-phase Louvain. A move is rejected if the community would exceed q_cap original nodes.
/// If `q_history` is given, Q after every sweep and every aggregation is appended.
Partition louvain(const IsingModel& model, int q_cap, std::uint64_t seed, std::vector<double>* q_history = nullptr);

/// Shuffle the nodes and cut them into consecutive chunks of q_cap.
Partition random_partition(const IsingModel& model, int q_cap, std::uint64_t seed);

/// Agglomerative merging by largest modularity increase, skipping merges above q_cap.
Partition greedy_modularity(const IsingModel& model, int q_cap);

}  // namespace dqaoa
