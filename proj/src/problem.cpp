#include "dqaoa/problem.hpp"

#include <cmath>

#include "dqaoa/error.hpp"

namespace dqaoa {

namespace {

bool is_integral(double v) { return std::abs(v - std::round(v)) < 1e-9; }

}  // namespace

bool Constraint::satisfied_by(std::span<const std::uint8_t> x) const {
  const double v = poly.evaluate(x);
  if (kind == ConstraintKind::EqualZero) return std::abs(v) < 1e-9;
  return v <= 1e-9;
}

bool ConstrainedProblem::feasible(std::span<const std::uint8_t> x) const {
  for (const auto& c : constraints)
    if (!c.satisfied_by(x)) return false;
  return true;
}

void ConstrainedProblem::validate() const {
  int max_index = objective.max_var();
  for (const auto& c : constraints) max_index = std::max(max_index, c.poly.max_var());
  if (max_index >= num_vars())
    throw InputError("variable index " + std::to_string(max_index) + " has no registered name");
}

void ReductionConfig::validate() const {
  if (mu && !(*mu > 0.0)) throw InputError("penalty weight mu must be positive");
  if (lambda && !(*lambda > 0.0)) throw InputError("quadratization weight lambda must be positive");
  if (slack_bits && *slack_bits < 0) throw InputError("slack bit count must be non-negative");
  if (q_cap < 2) throw InputError("qubit cap must be at least 2");
}

ConstrainedProblem to_minimization(const ConstrainedProblem& problem) {
  ConstrainedProblem out = problem;
  if (problem.sense == Sense::Maximize) {
    out.objective *= -1.0;
    out.sense = Sense::Minimize;
    out.negated = !problem.negated;
  }
  return out;
}

double upper_bound(const MultilinearPolynomial& poly) {
  double r = 0.0;
  for (const auto& [vars, c] : poly.terms()) {
    if (vars.empty())
      r += c;
    else if (c > 0)
      r += c;
  }
  return r;
}

SlackResult add_slack(const Constraint& constraint, int first_free_index, std::optional<int> bits_override) {
  if (constraint.kind != ConstraintKind::LeqZero) throw InputError("add_slack expects a <= 0 constraint");
  for (const auto& [vars, c] : constraint.poly.terms())
    if (!is_integral(c)) throw InputError("slack conversion requires integer constraint coefficients");
  if (bits_override && *bits_override < 0) throw InputError("slack bit count must be non-negative");

  // -g is the slack value needed to close the gap.
  const double raw = upper_bound(constraint.poly * -1.0);
  if (raw < -1e-9) throw InfeasibleError("constraint cannot be satisfied by any Boolean assignment");

  const double range = std::max(0.0, std::round(raw));
  int bits = 0;
  if (bits_override) {
    bits = *bits_override;
  } else {
    while (std::ldexp(1.0, bits) - 1.0 < range) ++bits;
  }

  SlackResult out;
  out.range = range;
  out.equality.kind = ConstraintKind::EqualZero;
  out.equality.poly = constraint.poly;
  for (int b = 0; b < bits; ++b) {
    const int idx = first_free_index + b;
    out.equality.poly.add_term({idx}, std::ldexp(1.0, b));
    out.slack_vars.push_back(idx);
  }
  return out;
}

double default_mu(const MultilinearPolynomial& objective) {
  double s = 1.0;
  for (const auto& [vars, c] : objective.terms()) s += std::abs(c);
  return s;
}

PenalizedObjective penalize(const ConstrainedProblem& problem, const ReductionConfig& config) {
  config.validate();
  if (problem.sense != Sense::Minimize) throw InputError("penalize expects a minimization problem");
  const double mu = config.mu.value_or(default_mu(problem.objective));

  MultilinearPolynomial f = problem.objective;
  for (const auto& c : problem.constraints) {
    if (c.kind != ConstraintKind::EqualZero)
      throw InputError("penalize expects equality constraints; convert inequalities with add_slack");
    f += mu * (c.poly * c.poly);
  }
  PenalizedObjective out;
  out.offset = f.constant();
  out.poly = f.without_constant();
  out.mu = mu;
  return out;
}

}  // namespace dqaoa
