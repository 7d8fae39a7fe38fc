#include "dqaoa/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "dqaoa/error.hpp"

namespace dqaoa {

namespace {

Spin rule_value(double field) { return field >= 0.0 ? Spin{-1} : Spin{1}; }

double abs_sum(const MultilinearPolynomial& poly) {
  double s = 0.0;
  for (const auto& [vars, c] : poly.terms())
    if (!vars.empty()) s += std::abs(c);
  return s;
}

}  // namespace

UncoupledResult eliminate_uncoupled(const MultilinearPolynomial& poly) {
  UncoupledResult out{poly, {}};
  while (true) {
    std::map<int, int> count;
    std::map<int, double> coeff_of;
    for (const auto& [vars, c] : out.poly.terms())
      for (int v : vars) {
        ++count[v];
        coeff_of[v] = c;
      }
    std::map<int, std::uint8_t> fix;
    for (const auto& [v, n] : count)
      if (n == 1) fix[v] = coeff_of[v] > 0.0 ? 0 : 1;
    if (fix.empty()) break;

    MultilinearPolynomial next;
    for (const auto& [vars, c] : out.poly.terms()) {
      VarSet kept;
      bool zero = false;
      for (int v : vars) {
        auto it = fix.find(v);
        if (it == fix.end()) {
          kept.push_back(v);
        } else if (it->second == 0) {
          zero = true;
          break;
        }
      }
      if (!zero) next.add_term(std::move(kept), c);
    }
    for (const auto& [v, value] : fix) out.fixed.push_back({v, value});
    out.poly = std::move(next);
  }
  return out;
}

QuadratizeResult quadratize(const MultilinearPolynomial& poly, std::optional<double> lambda, int first_aux_index) {
  if (lambda && !(*lambda > 0.0)) throw InputError("lambda must be positive");
  QuadratizeResult out{poly, {}};
  int next_aux = first_aux_index >= 0 ? first_aux_index : poly.max_var() + 1;
  while (out.poly.degree() > 2) {
    std::map<std::pair<int, int>, int> freq;
    for (const auto& [vars, c] : out.poly.terms()) {
      if (vars.size() < 3) continue;
      for (std::size_t a = 0; a < vars.size(); ++a)
        for (std::size_t b = a + 1; b < vars.size(); ++b) ++freq[{vars[a], vars[b]}];
    }
    // Map order makes the first maximum the lexicographically smallest pair.
    auto best = freq.begin();
    for (auto it = freq.begin(); it != freq.end(); ++it)
      if (it->second > best->second) best = it;
    const auto [i, j] = best->first;
    const int y = next_aux++;

    MultilinearPolynomial next;
    double replaced = 0.0;
    for (const auto& [vars, c] : out.poly.terms()) {
      const bool has_pair = vars.size() >= 3 && std::binary_search(vars.begin(), vars.end(), i) &&
                            std::binary_search(vars.begin(), vars.end(), j);
      if (!has_pair) {
        next.add_term(vars, c);
        continue;
      }
      replaced += std::abs(c);
      VarSet v2;
      for (int v : vars)
        if (v != i && v != j) v2.push_back(v);
      v2.push_back(y);
      next.add_term(std::move(v2), c);
    }
    const double lam = lambda ? *lambda * replaced : 1.0 + abs_sum(out.poly);
    next.add_term({i, j}, lam);
    next.add_term({i, y}, -2.0 * lam);
    next.add_term({j, y}, -2.0 * lam);
    next.add_term({y}, 3.0 * lam);
    out.poly = std::move(next);
    out.aux.push_back({y, i, j, lam});
  }
  return out;
}

IsingModel to_ising(const MultilinearPolynomial& poly, int num_spins) {
  if (poly.degree() > 2) throw InputError("Ising mapping needs a polynomial of degree at most 2");
  const int n = num_spins >= 0 ? num_spins : poly.max_var() + 1;
  if (poly.max_var() >= n) throw InputError("polynomial references an index beyond the spin count");
  IsingModel m(n);
  for (const auto& [vars, c] : poly.terms()) {
    switch (vars.size()) {
      case 0: m.add_offset(c); break;
      case 1:
        m.add_offset(c / 2.0);
        m.add_linear(vars[0], -c / 2.0);
        break;
      default:
        m.add_offset(c / 4.0);
        m.add_linear(vars[0], -c / 4.0);
        m.add_linear(vars[1], -c / 4.0);
        m.add_coupling(vars[0], vars[1], c / 4.0);
        break;
    }
  }
  return m;
}

ChainElimination eliminate_chains(const IsingModel& model) {
  const int n = model.size();
  std::vector<std::map<int, double>> adj(n);
  for (const auto& [ij, w] : model.couplings()) {
    adj[ij.first][ij.second] = w;
    adj[ij.second][ij.first] = w;
  }
  std::vector<double> lin = model.linear_terms();
  double offset = model.offset();
  std::vector<bool> removed(n, false);
  std::set<int> work;
  for (int k = 0; k < n; ++k)
    if (adj[k].size() <= 1) work.insert(k);

  ChainElimination out;
  while (!work.empty()) {
    const int j = *work.begin();
    work.erase(work.begin());
    if (removed[j] || adj[j].size() > 1) continue;
    const double wj = lin[j];
    if (adj[j].empty()) {
      out.rules.push_back({j, -1, 0.0, wj});
      offset -= std::abs(wj);
    } else {
      const auto [i, w] = *adj[j].begin();
      out.rules.push_back({j, i, w, wj});
      adj[i].erase(j);
      adj[j].clear();
      if (wj == 0.0) {
        offset -= std::abs(w);
      } else {
        // min over z_j of z_j (w z_i + wj) is affine in z_i.
        const double a = -std::abs(w + wj);
        const double b = -std::abs(-w + wj);
        offset += (a + b) / 2.0;
        lin[i] += (a - b) / 2.0;
      }
      if (adj[i].size() <= 1) work.insert(i);
    }
    removed[j] = true;
  }

  out.renaming.old_count = n;
  out.renaming.new_of_old.assign(n, -1);
  std::vector<int> kept;
  for (int k = 0; k < n; ++k)
    if (!removed[k]) {
      out.renaming.new_of_old[k] = static_cast<int>(kept.size());
      kept.push_back(k);
    }
  out.renaming.new_count = static_cast<int>(kept.size());

  IsingModel reduced(out.renaming.new_count);
  for (std::size_t a = 0; a < kept.size(); ++a) {
    reduced.set_label(static_cast<int>(a), model.labels()[kept[a]]);
    if (std::abs(lin[kept[a]]) >= kCoeffEpsilon) reduced.add_linear(static_cast<int>(a), lin[kept[a]]);
  }
  for (const auto& [ij, w] : model.couplings()) {
    const int a = out.renaming.new_of_old[ij.first], b = out.renaming.new_of_old[ij.second];
    if (a >= 0 && b >= 0) reduced.add_coupling(a, b, w);
  }
  reduced.set_offset(offset);
  out.model = std::move(reduced);
  return out;
}

namespace {

SpinAssignment replay_chains(const std::vector<ChainRule>& rules, const Renaming& renaming,
                             std::span<const Spin> reduced) {
  if (static_cast<int>(reduced.size()) != renaming.new_count)
    throw InputError("assignment has " + std::to_string(reduced.size()) + " spins, reduced model has " +
                     std::to_string(renaming.new_count));
  SpinAssignment z(renaming.old_count, 0);
  for (int k = 0; k < renaming.old_count; ++k)
    if (renaming.new_of_old[k] >= 0) z[k] = reduced[renaming.new_of_old[k]];
  for (auto it = rules.rbegin(); it != rules.rend(); ++it) {
    double field = it->linear_coeff;
    if (it->neighbor >= 0) {
      if (z[it->neighbor] == 0) throw ReconstructionError("chain rule refers to an unassigned spin");
      field += it->quad_coeff * z[it->neighbor];
    }
    z[it->eliminated] = rule_value(field);
  }
  return z;
}

}  // namespace

SpinAssignment expand_chains(const ChainElimination& chains, std::span<const Spin> reduced) {
  return replay_chains(chains.rules, chains.renaming, reduced);
}

ReductionResult reduce_full(const ConstrainedProblem& problem, const ReductionConfig& config) {
  config.validate();
  problem.validate();
  ReductionResult res;
  ReductionTrace& trace = res.trace;
  trace.original = problem;
  trace.original_var_count = problem.num_vars();
  trace.names = problem.variable_names;

  ConstrainedProblem p = to_minimization(problem);
  trace.sense_flip = p.negated;

  int next_index = problem.num_vars();
  for (std::size_t c = 0; c < p.constraints.size(); ++c) {
    if (p.constraints[c].kind != ConstraintKind::LeqZero) continue;
    SlackResult s = add_slack(p.constraints[c], next_index, config.slack_bits);
    for (std::size_t b = 0; b < s.slack_vars.size(); ++b)
      trace.names.push_back("s" + std::to_string(c) + "_" + std::to_string(b));
    next_index += static_cast<int>(s.slack_vars.size());
    p.constraints[c] = std::move(s.equality);
  }
  const int boolean_count = next_index;

  PenalizedObjective pen = penalize(p, config);
  MultilinearPolynomial f = pen.poly;
  f.add_term({}, pen.offset);

  UncoupledResult unc = eliminate_uncoupled(f);
  for (const auto& fx : unc.fixed) trace.steps.emplace_back(fx);

  QuadratizeResult quad = quadratize(unc.poly, config.lambda, boolean_count);
  for (const auto& a : quad.aux) {
    trace.steps.emplace_back(a);
    trace.names.push_back("y" + std::to_string(a.aux - boolean_count + 1));
  }
  trace.total_var_count = boolean_count + static_cast<int>(quad.aux.size());

  Renaming compact;
  compact.old_count = trace.total_var_count;
  compact.new_of_old.assign(compact.old_count, -1);
  std::vector<bool> fixed(compact.old_count, false);
  for (const auto& fx : unc.fixed) fixed[fx.index] = true;
  MultilinearPolynomial g;
  for (int k = 0; k < compact.old_count; ++k)
    if (!fixed[k]) compact.new_of_old[k] = compact.new_count++;
  for (const auto& [vars, c] : quad.poly.terms()) {
    VarSet v2;
    for (int v : vars) v2.push_back(compact.new_of_old[v]);
    g.add_term(std::move(v2), c);
  }
  trace.steps.emplace_back(compact);
  trace.steps.emplace_back(IsingMapMarker{});

  IsingModel ising = to_ising(g, compact.new_count);
  for (int k = 0; k < compact.old_count; ++k)
    if (compact.new_of_old[k] >= 0) ising.set_label(compact.new_of_old[k], trace.names[k]);

  ChainElimination chains = eliminate_chains(ising);
  for (const auto& r : chains.rules) trace.steps.emplace_back(r);
  trace.steps.emplace_back(chains.renaming);

  res.model = std::move(chains.model);
  trace.final_var_count = res.model.size();
  trace.offset = res.model.offset();
  return res;
}

Reconstruction reconstruct(const ReductionTrace& trace, std::span<const Spin> final_spins, bool strict) {
  if (static_cast<int>(final_spins.size()) != trace.final_var_count)
    throw InputError("assignment has " + std::to_string(final_spins.size()) + " spins, reduced model has " +
                     std::to_string(trace.final_var_count));
  if (!is_valid_spins(final_spins)) throw InputError("spin values must be -1 or +1");

  // Split the steps at the Ising marker: Boolean steps before, spin steps after.
  std::size_t marker = trace.steps.size();
  for (std::size_t s = 0; s < trace.steps.size(); ++s)
    if (std::holds_alternative<IsingMapMarker>(trace.steps[s])) marker = s;

  // Each chain block is a run of rules closed by a renaming.
  std::vector<std::pair<std::vector<ChainRule>, Renaming>> blocks;
  std::vector<ChainRule> pending;
  for (std::size_t s = marker + 1; s < trace.steps.size(); ++s) {
    if (const auto* rule = std::get_if<ChainRule>(&trace.steps[s])) {
      pending.push_back(*rule);
    } else if (const auto* ren = std::get_if<Renaming>(&trace.steps[s])) {
      blocks.emplace_back(std::move(pending), *ren);
      pending.clear();
    }
  }
  if (!pending.empty()) throw ReconstructionError("chain rules without a renaming");
  SpinAssignment z(final_spins.begin(), final_spins.end());
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) z = replay_chains(it->first, it->second, z);

  // Spins are now indexed by the compact Boolean indices.
  BoolAssignment compact(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) compact[k] = z[k] < 0 ? 1 : 0;

  Reconstruction out;
  out.all.assign(trace.total_var_count, 0);
  std::vector<bool> known(trace.total_var_count, false);
  for (std::size_t s = marker; s-- > 0;) {
    const auto& step = trace.steps[s];
    if (const auto* ren = std::get_if<Renaming>(&step)) {
      if (ren->new_count != static_cast<int>(compact.size()))
        throw ReconstructionError("renaming does not match the spin count");
      for (int k = 0; k < ren->old_count; ++k)
        if (ren->new_of_old[k] >= 0) {
          out.all[k] = compact[ren->new_of_old[k]];
          known[k] = true;
        }
    } else if (const auto* aux = std::get_if<AuxDefinition>(&step)) {
      if (out.all[aux->aux] != (out.all[aux->i] & out.all[aux->j])) out.aux_violations.push_back(aux->aux);
    } else if (const auto* fx = std::get_if<FixedBoolean>(&step)) {
      out.all[fx->index] = fx->value;
      known[fx->index] = true;
    }
  }
  for (int k = 0; k < trace.total_var_count; ++k)
    if (!known[k]) throw ReconstructionError("variable " + std::to_string(k) + " was never assigned");
  std::sort(out.aux_violations.begin(), out.aux_violations.end());
  if (strict && !out.aux_violations.empty())
    throw ReconstructionError("auxiliary variable " + trace.names.at(out.aux_violations.front()) +
                              " disagrees with its product; lambda is too small");

  out.x.assign(out.all.begin(), out.all.begin() + trace.original_var_count);
  out.objective = trace.original.objective.evaluate(out.x);
  out.feasible = trace.original.feasible(out.x);
  return out;
}

nlohmann::json trace_to_json(const ReductionTrace& trace) {
  using nlohmann::json;
  json steps = json::array();
  for (const auto& step : trace.steps) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, FixedBoolean>) {
            steps.push_back({{"type", "fixed"}, {"var", trace.names.at(s.index)}, {"value", s.value}});
          } else if constexpr (std::is_same_v<T, AuxDefinition>) {
            steps.push_back({{"type", "aux"},
                             {"var", trace.names.at(s.aux)},
                             {"product", {trace.names.at(s.i), trace.names.at(s.j)}},
                             {"lambda", s.lambda}});
          } else if constexpr (std::is_same_v<T, IsingMapMarker>) {
            steps.push_back({{"type", "ising"}});
          } else if constexpr (std::is_same_v<T, ChainRule>) {
            steps.push_back({{"type", "chain"},
                             {"spin", s.eliminated},
                             {"neighbor", s.neighbor},
                             {"quad", s.quad_coeff},
                             {"linear", s.linear_coeff}});
          } else {
            steps.push_back({{"type", "rename"}, {"old_count", s.old_count}, {"map", s.new_of_old}});
          }
        },
        step);
  }
  return {{"original_var_count", trace.original_var_count},
          {"total_var_count", trace.total_var_count},
          {"final_var_count", trace.final_var_count},
          {"sense_flip", trace.sense_flip},
          {"offset", trace.offset},
          {"names", trace.names},
          {"steps", steps}};
}

}  // namespace dqaoa
