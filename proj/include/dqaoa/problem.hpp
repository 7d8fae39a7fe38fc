#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dqaoa/polynomial.hpp"

namespace dqaoa {

enum class ConstraintKind { EqualZero, LeqZero };
enum class Sense { Minimize, Maximize };

/// `poly == 0` or `poly <= 0`.
struct Constraint {
  MultilinearPolynomial poly;
  ConstraintKind kind = ConstraintKind::EqualZero;

  bool satisfied_by(std::span<const std::uint8_t> x) const;
  bool operator==(const Constraint&) const = default;
};

struct ConstrainedProblem {
  MultilinearPolynomial objective;
  Sense sense = Sense::Minimize;
  std::vector<Constraint> constraints;
  std::vector<std::string> variable_names;
  /// Set by to_minimization when the objective was negated from a maximization.
  bool negated = false;

  int num_vars() const { return static_cast<int>(variable_names.size()); }
  bool feasible(std::span<const std::uint8_t> x) const;
  /// Converts a value of the (possibly negated) objective back to the original sense.
  double original_value(double value) const { return negated ? -value : value; }
  /// Throws InputError if any referenced index lacks a name.
  void validate() const;

  bool operator==(const ConstrainedProblem&) const = default;
};

struct ReductionConfig {
  /// Penalty weight. Unset means 1 + sum |objective coefficients|.
  std::optional<double> mu;
  /// Quadratization weight. Unset means 1 + sum |coefficients of the current polynomial|
  /// per substitution; a value P means lambda = P * sum |coefficients of the replaced terms|.
  std::optional<double> lambda;
  /// Bit count for every slack register. Unset means ceil(log2(R + 1)).
  std::optional<int> slack_bits;
  int q_cap = 10;

  void validate() const;
};

/// Negate a maximization objective; identity on minimization problems.
ConstrainedProblem to_minimization(const ConstrainedProblem& problem);

struct SlackResult {
  Constraint equality;
  std::vector<int> slack_vars;
  /// Upper bound of -g over the cube, clamped below at 0.
  double range = 0.0;
};

/// Convert `g <= 0` into `g + sum_b 2^b s_b == 0` with fresh slack bits starting at `first_free_index`.
SlackResult add_slack(const Constraint& constraint, int first_free_index,
                      std::optional<int> bits_override = std::nullopt);

/// Upper bound of a polynomial over the Boolean cube (exact for linear polynomials).
double upper_bound(const MultilinearPolynomial& poly);

struct PenalizedObjective {
  MultilinearPolynomial poly;  ///< no constant term
  double offset = 0.0;
  double mu = 0.0;
};

/// f0 + mu * sum g_w^2, expanded to multilinear form with the constant split out.
/// Requires a minimization problem with equality constraints only.
PenalizedObjective penalize(const ConstrainedProblem& problem, const ReductionConfig& config);

double default_mu(const MultilinearPolynomial& objective);

}  // namespace dqaoa
