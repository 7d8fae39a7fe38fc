#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dqaoa {

using Spin = std::int8_t;
/// One entry per spin, each exactly -1 or +1.
using SpinAssignment = std::vector<Spin>;
/// Like SpinAssignment but 0 marks an unassigned spin.
using PartialSpins = std::vector<Spin>;

bool is_valid_spins(std::span<const Spin> z);

struct Coupling {
  int i = 0;
  int j = 0;
  double w = 0.0;
};

/// energy(z) = sum_{i<j} w_ij z_i z_j + sum_k w_k z_k + offset, z in {-1,+1}^n.
///
/// Pairs are stored with i < j; zero couplings are never stored.
class IsingModel {
 public:
  IsingModel() = default;
  explicit IsingModel(int n);

  int size() const { return n_; }
  /// Appends a spin and returns its index.
  int add_spin(std::string label = {});

  void add_linear(int k, double w);
  void add_coupling(int i, int j, double w);
  void set_offset(double c) { offset_ = c; }
  void add_offset(double c) { offset_ += c; }

  double linear(int k) const { return linear_.at(k); }
  double coupling(int i, int j) const;
  double offset() const { return offset_; }
  const std::vector<double>& linear_terms() const { return linear_; }
  const std::map<std::pair<int, int>, double>& couplings() const { return quadratic_; }
  std::vector<Coupling> coupling_list() const;

  /// Neighbours with coupling weights, in ascending neighbour order.
  std::vector<std::vector<std::pair<int, double>>> adjacency() const;
  std::vector<int> degrees() const;

  const std::vector<std::string>& labels() const { return labels_; }
  void set_label(int k, std::string label) { labels_.at(k) = std::move(label); }
  std::string label(int k) const;

  bool operator==(const IsingModel&) const = default;

 private:
  int n_ = 0;
  std::vector<double> linear_;
  std::map<std::pair<int, int>, double> quadratic_;
  double offset_ = 0.0;
  std::vector<std::string> labels_;
};

/// Exact energy including the offset. Throws InputError on dimension mismatch.
double energy(const IsingModel& model, std::span<const Spin> z);

struct GroundState {
  SpinAssignment z;
  double value = 0.0;
};

inline constexpr int kBruteForceCap = 26;

/// Global minimiser by exhaustive enumeration (n <= 26). Ties go to the lexicographically
/// smallest assignment with -1 < +1. Uses the parallel kernel.
GroundState brute_force_min(const IsingModel& model);

/// Model restricted to `interior`, with exterior spins folded in as fields.
///
/// energy(model, local) + sum_i boundary_linear[i] * local[i] + exterior-only energy equals the
/// full-model energy at the combined assignment.
struct SubModel {
  IsingModel model;  ///< interior couplings and linear terms, offset 0
  std::vector<double> boundary_linear;
  std::vector<int> to_global;  ///< local index -> global index

  double energy(std::span<const Spin> local) const;
  /// The model with boundary fields merged into the linear terms.
  IsingModel with_boundary() const;
};

/// `exterior_fix` is indexed globally; 0 marks unfixed. Every coupling leaving `interior` must
/// land on a fixed spin or the call throws InputError.
SubModel induced_submodel(const IsingModel& model, std::span<const int> interior, std::span<const Spin> exterior_fix);

/// Couplings and linear terms among `nodes` only (no boundary); local indices follow `nodes`.
IsingModel induced_model(const IsingModel& model, std::span<const int> nodes);

/// Graph text format: "n count", "q i j w", "l i w", "c offset", '#' comments, 0-based indices.
IsingModel parse_graph(std::string_view text);
std::string format_graph(const IsingModel& model);

/// Decode basis index `b`: qubit k is bit k, |0> <-> z = +1.
SpinAssignment spins_from_basis(std::uint64_t b, int n);
std::uint64_t basis_from_spins(std::span<const Spin> z);

}  // namespace dqaoa
