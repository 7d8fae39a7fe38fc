#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "dqaoa/ising.hpp"
#include "dqaoa/polynomial.hpp"
#include "dqaoa/problem.hpp"

namespace dqaoa {

/// A variable that occurred in a single term, fixed to the value minimising that term.
struct FixedBoolean {
  int index = 0;
  std::uint8_t value = 0;
};

/// y = x_i * x_j, enforced by lambda * (x_i x_j - 2 x_i y - 2 x_j y + 3 y).
struct AuxDefinition {
  int aux = 0;
  int i = 0;
  int j = 0;
  double lambda = 0.0;
};

/// Boolean index k becomes spin index k from here on, via x = (1 - z) / 2.
struct IsingMapMarker {};

/// z_j = -sign(quad_coeff * z_i + linear_coeff), sign(0) = +1. neighbor < 0 means no neighbour.
struct ChainRule {
  int eliminated = 0;
  int neighbor = -1;
  double quad_coeff = 0.0;
  double linear_coeff = 0.0;
};

/// new_of_old[k] is the new index of old index k, or -1 if k was dropped.
struct Renaming {
  int old_count = 0;
  std::vector<int> new_of_old;
  int new_count = 0;
};

using ReductionStep = std::variant<FixedBoolean, AuxDefinition, IsingMapMarker, ChainRule, Renaming>;

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  int original_var_count = 0;
  /// Boolean variables including slack and auxiliary bits.
  int total_var_count = 0;
  int final_var_count = 0;
  bool sense_flip = false;
  /// Total constant carried into the final model's offset.
  double offset = 0.0;
  /// The problem as given, used to recompute the objective and check feasibility.
  ConstrainedProblem original;
  /// Names of all Boolean variables (original, then slack "s<c>_<b>", then auxiliary "y<k>").
  std::vector<std::string> names;
};

struct UncoupledResult {
  MultilinearPolynomial poly;
  std::vector<FixedBoolean> fixed;
};

/// Fix every variable that appears in exactly one term, repeated until none is left.
UncoupledResult eliminate_uncoupled(const MultilinearPolynomial& poly);

struct QuadratizeResult {
  MultilinearPolynomial poly;
  std::vector<AuxDefinition> aux;
};

/// Rosenberg substitution until the degree is at most 2. Auxiliary indices start at
/// `first_aux_index` (default: one past the largest referenced index).
///
/// `lambda` unset: 1 + sum |non-constant coefficients| of the current polynomial.
/// `lambda` = P: P * sum |coefficients of the terms being rewritten|.
QuadratizeResult quadratize(const MultilinearPolynomial& poly, std::optional<double> lambda = std::nullopt,
                            int first_aux_index = -1);

/// x_k = (1 - z_k) / 2 for k < num_spins (default: max index + 1). Throws InputError if degree > 2.
IsingModel to_ising(const MultilinearPolynomial& poly, int num_spins = -1);

struct ChainElimination {
  IsingModel model;
  std::vector<ChainRule> rules;  ///< in elimination order, indices of the input model
  Renaming renaming;             ///< input index -> output index
};

/// Peel spins of coupling degree <= 1 until none remain. The minimum over the removed spins is
/// folded exactly into the survivors: min(full) = min(reduced) and expand_chains of any reduced
/// minimiser is a full minimiser.
ChainElimination eliminate_chains(const IsingModel& model);

/// Extend an assignment of the reduced model back to the input model of eliminate_chains.
SpinAssignment expand_chains(const ChainElimination& chains, std::span<const Spin> reduced);

struct ReductionResult {
  IsingModel model;
  ReductionTrace trace;
};

/// to_minimization, add_slack, penalize, eliminate_uncoupled, quadratize, to_ising, eliminate_chains.
ReductionResult reduce_full(const ConstrainedProblem& problem, const ReductionConfig& config = {});

struct Reconstruction {
  BoolAssignment x;    ///< original variables
  BoolAssignment all;  ///< every Boolean variable of the trace
  double objective = 0.0;  ///< original objective in the original sense
  bool feasible = false;
  /// Auxiliary indices whose value disagrees with the product they stand for.
  std::vector<int> aux_violations;
};

/// Replay the trace backwards. With `strict`, an auxiliary violation throws ReconstructionError.
Reconstruction reconstruct(const ReductionTrace& trace, std::span<const Spin> final_spins, bool strict = true);

nlohmann::json trace_to_json(const ReductionTrace& trace);

}  // namespace dqaoa
