#pragma once

#include <optional>
#include <vector>

#include "json.hpp"

#include "dqaoa/ising.hpp"
#include "dqaoa/partition.hpp"
#include "dqaoa/qaoa.hpp"

namespace dqaoa {

enum class PartitionMethod { Louvain, Random, Greedy };
enum class SignSolver { Exhaustive, Qaoa };

struct DistributedConfig {
  int q_cap = 10;
  PartitionMethod partition = PartitionMethod::Louvain;
  QaoaConfig qaoa;
  /// Local updates re-solve frozen sets up to this size exhaustively, larger ones with QAOA.
  int exhaustive_update_limit = 12;
  /// Also re-solve the frozen part when the candidate equals the old solution or its flip.
  bool resolve_truncated = false;
  std::uint64_t seed = 0;

  void validate() const;
};

Partition make_partition(const IsingModel& model, PartitionMethod method, int q_cap, std::uint64_t seed);

struct InOut {
  std::vector<int> in_set;   ///< every neighbour inside the community
  std::vector<int> out_set;  ///< at least one neighbour outside
};

std::vector<InOut> classify_nodes(const IsingModel& model, const Partition& partition);

struct SubgraphSolution {
  std::vector<int> nodes;  ///< sorted
  SpinAssignment local_z;  ///< aligned with nodes
  double energy = 0.0;     ///< induced-model energy (no boundary)
};

/// QAOA on the community's induced model; edges leaving the community are ignored.
SubgraphSolution solve_local(const IsingModel& model, const std::vector<int>& nodes, const QaoaConfig& config);

/// One community with its frozen set replaced by a representative spin.
///
/// Spin 0 is the representative when `frozen` is non-empty; free nodes follow in order.
/// For an assignment with the representative at s and free nodes at f,
///   energy(model) + carried = energy of the community's induced model at (s * local on frozen, f).
struct CompressedGraph {
  IsingModel model;
  bool has_rep = false;
  std::vector<int> free_nodes;  ///< original ids of spins 1.. (or 0.. without rep)
  double carried = 0.0;         ///< frozen-frozen coupling energy at the local solution
};

/// `frozen` defaults to the in-set.
CompressedGraph compress(const IsingModel& model, const SubgraphSolution& solution, const std::vector<int>& frozen);

/// Greedy union of adjacent compressed graphs by descending inter-graph |w|, ties by id, while
/// the union stays within q_cap nodes. Returns groups of compressed-graph ids, ordered by first id.
std::vector<std::vector<int>> join(const IsingModel& next_graph, const std::vector<std::vector<int>>& graph_nodes,
                                   int q_cap);

/// Candidate from the parent: frozen spins take s * local, free spins take the parent's copies.
SpinAssignment global_update(const SubgraphSolution& child, const std::vector<int>& frozen, Spin rep_sign,
                             const std::vector<Spin>& free_values);

struct LocalUpdateResult {
  SpinAssignment z;  ///< aligned with the child's nodes
  bool truncated = false;
  bool resolved = false;
};

/// Refine the frozen part of a candidate with every other spin of `level_z` held fixed.
LocalUpdateResult local_update(const IsingModel& model, const SubgraphSolution& child,
                               const std::vector<int>& frozen, const SpinAssignment& candidate,
                               const SpinAssignment& level_z, const DistributedConfig& config,
                               std::uint64_t seed);

struct NaiveResult {
  SpinAssignment z;
  std::vector<Spin> signs;
  double value = 0.0;
};

/// Sign model over communities: J_ab = sum w_ij z_i z_j across a,b; h_a = sum w_i z_i; the offset
/// carries intra-community energy so energy(signs) = energy(model, concatenation).
IsingModel sign_model(const IsingModel& model, const Partition& partition,
                      const std::vector<SpinAssignment>& locals);

/// Choose one sign per community. Qaoa falls back to hierarchical chunks when M > q_cap.
NaiveResult naive_merge(const IsingModel& model, const Partition& partition,
                        const std::vector<SpinAssignment>& locals, SignSolver solver,
                        const DistributedConfig& config);

struct NaiveReport {
  NaiveResult result;
  Partition partition;
  double modularity = 0.0;
  std::vector<SpinAssignment> level1_locals;
};

/// Baseline pipeline: the partition and first-level local solutions of solve_distributed (same
/// seeds), followed by naive_merge.
NaiveReport solve_naive(const IsingModel& model, const DistributedConfig& config, SignSolver solver);

struct LevelReport {
  int level = 0;
  int groups = 0;
  int nodes = 0;
  int roots = 0;
  int fallback_freezes = 0;
  double energy = 0.0;  ///< level graph energy at the final level assignment
};

struct DistributedReport {
  SpinAssignment z;
  double value = 0.0;
  int tree_height = 0;
  Partition partition;
  double modularity = 0.0;
  std::vector<SpinAssignment> level1_locals;
  std::vector<LevelReport> levels;
  int local_updates = 0;
  int truncations = 0;
};

/// Partition, solve, compress and join until every group is a root, then update top-down.
DistributedReport solve_distributed(const IsingModel& model, const DistributedConfig& config);

/// Same, with a given partition and optionally given first-level local solutions.
DistributedReport solve_with_partition(const IsingModel& model, const Partition& partition,
                                       const DistributedConfig& config,
                                       const std::vector<SpinAssignment>* level1_locals = nullptr);

/// (v_max - achieved) / (v_max - v_min). Throws InputError unless v_max > v_min.
double approximation_ratio(double v_max, double v_min, double achieved);

nlohmann::json report_to_json(const DistributedReport& report);

}  // namespace dqaoa
