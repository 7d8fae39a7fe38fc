#include "dqaoa/distributed.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "dqaoa/error.hpp"
#include "dqaoa/seeds.hpp"

namespace dqaoa {

namespace {

SpinAssignment flipped(SpinAssignment z) {
  for (auto& s : z) s = static_cast<Spin>(-s);
  return z;
}

std::size_t position(const std::vector<int>& sorted, int v) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
  if (it == sorted.end() || *it != v) throw InputError("node " + std::to_string(v) + " is not in the community");
  return static_cast<std::size_t>(it - sorted.begin());
}

struct DisjointSets {
  std::vector<int> parent, size;
  explicit DisjointSets(const std::vector<int>& sizes) : parent(sizes.size()), size(sizes) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

// Minimiser of a small model, either exhaustively or with QAOA.
GroundState minimise(const IsingModel& m, const DistributedConfig& config, std::uint64_t seed) {
  if (m.size() <= config.exhaustive_update_limit) return brute_force_min(m);
  QaoaConfig qc = config.qaoa;
  qc.seed = seed;
  auto r = optimize(m, qc);
  return {r.best_bitstring, r.best_energy};
}

struct Group {
  SubgraphSolution sol;
  InOut io;
  std::vector<int> frozen, free;
  int rep = -1;
  std::vector<int> free_copy;
  int parent = -1;
  bool root = false;
};

struct Level {
  IsingModel graph;
  std::vector<Group> groups;
  std::vector<int> group_of;
  int fallback_freezes = 0;
};

std::vector<int> group_map(int n, const std::vector<Group>& groups) {
  std::vector<int> g(n, -1);
  for (std::size_t k = 0; k < groups.size(); ++k)
    for (int v : groups[k].sol.nodes) g[v] = static_cast<int>(k);
  return g;
}

void classify(Level& level) {
  for (auto& g : level.groups) g.io = {};
  const auto adj = level.graph.adjacency();
  for (int u = 0; u < level.graph.size(); ++u) {
    bool inside = true;
    for (const auto& [v, w] : adj[u])
      if (level.group_of[v] != level.group_of[u]) inside = false;
    auto& io = level.groups[level.group_of[u]].io;
    (inside ? io.in_set : io.out_set).push_back(u);
  }
}

struct NextLevel {
  IsingModel graph;
  std::vector<int> active;                   // non-root group ids, one compressed graph each
  std::vector<std::vector<int>> graph_nodes;  // next-level nodes of each compressed graph
};

// Contract frozen sets into representatives and copy free nodes. Assigns rep / free_copy.
NextLevel contract(Level& level, int level_index) {
  NextLevel next;
  int count = 0;
  for (std::size_t k = 0; k < level.groups.size(); ++k) {
    auto& g = level.groups[k];
    g.rep = -1;
    g.free_copy.clear();
    if (g.root) continue;
    next.active.push_back(static_cast<int>(k));
    std::vector<int> nodes;
    if (!g.frozen.empty()) {
      g.rep = count++;
      nodes.push_back(g.rep);
    }
    for (std::size_t t = 0; t < g.free.size(); ++t) {
      g.free_copy.push_back(count++);
      nodes.push_back(g.free_copy.back());
    }
    next.graph_nodes.push_back(std::move(nodes));
  }

  const int n = level.graph.size();
  std::vector<int> target(n, -1);
  std::vector<double> factor(n, 1.0);
  for (const auto& g : level.groups) {
    if (g.root) continue;
    for (int u : g.frozen) {
      target[u] = g.rep;
      factor[u] = g.sol.local_z[position(g.sol.nodes, u)];
    }
    for (std::size_t t = 0; t < g.free.size(); ++t) target[g.free[t]] = g.free_copy[t];
  }

  IsingModel m(count);
  for (std::size_t k = 0; k < level.groups.size(); ++k) {
    const auto& g = level.groups[k];
    if (g.root) continue;
    if (g.rep >= 0) m.set_label(g.rep, "I" + std::to_string(level_index + 1) + "_" + std::to_string(k));
    for (std::size_t t = 0; t < g.free.size(); ++t) m.set_label(g.free_copy[t], level.graph.label(g.free[t]));
  }
  m.set_offset(level.graph.offset());
  for (int u = 0; u < n; ++u)
    if (target[u] >= 0 && level.graph.linear(u) != 0.0) m.add_linear(target[u], level.graph.linear(u) * factor[u]);
  for (const auto& [ij, w] : level.graph.couplings()) {
    const int a = target[ij.first], b = target[ij.second];
    if (a < 0 || b < 0) continue;
    const double wf = w * factor[ij.first] * factor[ij.second];
    if (a == b)
      m.add_offset(wf);
    else
      m.add_coupling(a, b, wf);
  }
  next.graph = std::move(m);
  return next;
}

double external_weight(const Level& level, int u) {
  double s = 0.0;
  const auto adj = level.graph.adjacency();
  for (const auto& [v, w] : adj[u])
    if (level.group_of[v] != level.group_of[u]) s += std::abs(w);
  return s;
}

int compressed_size(const Group& g) { return (g.frozen.empty() ? 0 : 1) + static_cast<int>(g.free.size()); }

// Build the next level, freezing extra free nodes when no pair of compressed graphs can merge.
Level next_level(Level& level, int level_index, int q_cap) {
  while (true) {
    NextLevel next = contract(level, level_index);
    auto groups = join(next.graph, next.graph_nodes, q_cap);
    const std::size_t ngraphs = next.graph_nodes.size();

    // Adjacent pairs of compressed graphs.
    std::vector<int> graph_of(next.graph.size(), -1);
    for (std::size_t a = 0; a < ngraphs; ++a)
      for (int v : next.graph_nodes[a]) graph_of[v] = static_cast<int>(a);
    std::set<std::pair<int, int>> adjacent;
    for (const auto& [ij, w] : next.graph.couplings()) {
      int a = graph_of[ij.first], b = graph_of[ij.second];
      if (a != b) adjacent.insert({std::min(a, b), std::max(a, b)});
    }

    if (groups.size() < ngraphs || adjacent.empty()) {
      Level out;
      out.graph = std::move(next.graph);
      for (std::size_t g = 0; g < groups.size(); ++g) {
        Group ng;
        for (int a : groups[g]) {
          level.groups[next.active[a]].parent = static_cast<int>(g);
          ng.sol.nodes.insert(ng.sol.nodes.end(), next.graph_nodes[a].begin(), next.graph_nodes[a].end());
        }
        std::sort(ng.sol.nodes.begin(), ng.sol.nodes.end());
        out.groups.push_back(std::move(ng));
      }
      out.group_of = group_map(out.graph.size(), out.groups);
      return out;
    }

    // Fallback: smallest adjacent pair, then freeze the least externally bound free nodes.
    std::pair<int, int> pick{-1, -1};
    int best = std::numeric_limits<int>::max();
    for (const auto& [a, b] : adjacent) {
      const int s = compressed_size(level.groups[next.active[a]]) + compressed_size(level.groups[next.active[b]]);
      if (s < best) {
        best = s;
        pick = {a, b};
      }
    }
    Group& ga = level.groups[next.active[pick.first]];
    Group& gb = level.groups[next.active[pick.second]];
    std::vector<std::pair<double, int>> pool;
    for (int u : ga.free) pool.push_back({external_weight(level, u), u});
    for (int u : gb.free) pool.push_back({external_weight(level, u), u});
    std::sort(pool.begin(), pool.end());
    for (const auto& [ew, u] : pool) {
      if (compressed_size(ga) + compressed_size(gb) <= q_cap) break;
      Group& g = level.group_of[u] == level.group_of[ga.sol.nodes.front()] ? ga : gb;
      g.free.erase(std::find(g.free.begin(), g.free.end(), u));
      g.frozen.insert(std::upper_bound(g.frozen.begin(), g.frozen.end(), u), u);
      ++level.fallback_freezes;
    }
  }
}

}  // namespace

void DistributedConfig::validate() const {
  if (q_cap < 2) throw InputError("q_cap must be at least 2");
  if (q_cap > kSimulatorQubitCap) throw InputError("q_cap exceeds the simulator cap");
  if (exhaustive_update_limit < 0 || exhaustive_update_limit > kBruteForceCap)
    throw InputError("exhaustive update limit out of range");
  qaoa.validate();
}

Partition make_partition(const IsingModel& model, PartitionMethod method, int q_cap, std::uint64_t seed) {
  switch (method) {
    case PartitionMethod::Louvain: return louvain(model, q_cap, seed);
    case PartitionMethod::Random: return random_partition(model, q_cap, seed);
    case PartitionMethod::Greedy: return greedy_modularity(model, q_cap);
  }
  throw InputError("unknown partition method");
}

std::vector<InOut> classify_nodes(const IsingModel& model, const Partition& partition) {
  partition.validate(model.size());
  std::vector<InOut> out(partition.size());
  const auto adj = model.adjacency();
  for (int u = 0; u < model.size(); ++u) {
    const int c = partition.community_of[u];
    const bool inside =
        std::all_of(adj[u].begin(), adj[u].end(), [&](const auto& e) { return partition.community_of[e.first] == c; });
    (inside ? out[c].in_set : out[c].out_set).push_back(u);
  }
  return out;
}

SubgraphSolution solve_local(const IsingModel& model, const std::vector<int>& nodes, const QaoaConfig& config) {
  SubgraphSolution s;
  s.nodes = nodes;
  std::sort(s.nodes.begin(), s.nodes.end());
  const IsingModel sub = induced_model(model, s.nodes);
  if (sub.size() > kSimulatorQubitCap) throw InputError("community exceeds the simulator cap");
  auto r = optimize(sub, config);
  s.local_z = std::move(r.best_bitstring);
  s.energy = r.best_energy;
  return s;
}

CompressedGraph compress(const IsingModel& model, const SubgraphSolution& solution, const std::vector<int>& frozen) {
  CompressedGraph cg;
  cg.has_rep = !frozen.empty();
  const int base = cg.has_rep ? 1 : 0;
  std::vector<int> index(model.size(), -1);
  std::vector<double> factor(model.size(), 1.0);
  for (int u : frozen) {
    index[u] = 0;
    factor[u] = solution.local_z[position(solution.nodes, u)];
  }
  for (int u : solution.nodes)
    if (index[u] < 0 && !std::binary_search(frozen.begin(), frozen.end(), u)) {
      index[u] = base + static_cast<int>(cg.free_nodes.size());
      cg.free_nodes.push_back(u);
    }
  IsingModel m(base + static_cast<int>(cg.free_nodes.size()));
  for (int u : solution.nodes)
    if (model.linear(u) != 0.0) m.add_linear(index[u], model.linear(u) * factor[u]);
  const std::set<int> members(solution.nodes.begin(), solution.nodes.end());
  for (const auto& [ij, w] : model.couplings()) {
    if (!members.count(ij.first) || !members.count(ij.second)) continue;
    const int a = index[ij.first], b = index[ij.second];
    const double wf = w * factor[ij.first] * factor[ij.second];
    if (a == b)
      cg.carried += wf;
    else
      m.add_coupling(a, b, wf);
  }
  cg.model = std::move(m);
  return cg;
}

std::vector<std::vector<int>> join(const IsingModel& next_graph, const std::vector<std::vector<int>>& graph_nodes,
                                   int q_cap) {
  const int count = static_cast<int>(graph_nodes.size());
  std::vector<int> graph_of(next_graph.size(), -1);
  std::vector<int> sizes(count);
  for (int a = 0; a < count; ++a) {
    sizes[a] = static_cast<int>(graph_nodes[a].size());
    if (sizes[a] > q_cap) throw InputError("compressed graph exceeds q_cap");
    for (int v : graph_nodes[a]) graph_of[v] = a;
  }
  std::map<std::pair<int, int>, double> between;
  for (const auto& [ij, w] : next_graph.couplings()) {
    const int a = graph_of[ij.first], b = graph_of[ij.second];
    if (a < 0 || b < 0) throw InputError("join: node outside every compressed graph");
    if (a != b) between[{std::min(a, b), std::max(a, b)}] += std::abs(w);
  }
  std::vector<std::pair<std::pair<int, int>, double>> pairs(between.begin(), between.end());
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) { return x.second > y.second; });

  DisjointSets ds(sizes);
  for (const auto& [ab, w] : pairs) {
    const int ra = ds.find(ab.first), rb = ds.find(ab.second);
    if (ra != rb && ds.size[ra] + ds.size[rb] <= q_cap) ds.unite(ra, rb);
  }
  std::map<int, std::vector<int>> by_root;
  for (int a = 0; a < count; ++a) by_root[ds.find(a)].push_back(a);
  std::vector<std::vector<int>> out;
  for (auto& [r, members] : by_root) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

SpinAssignment global_update(const SubgraphSolution& child, const std::vector<int>& frozen, Spin rep_sign,
                             const std::vector<Spin>& free_values) {
  SpinAssignment cand(child.nodes.size(), 0);
  for (int u : frozen) {
    const auto p = position(child.nodes, u);
    cand[p] = static_cast<Spin>(rep_sign * child.local_z[p]);
  }
  std::size_t t = 0;
  for (std::size_t p = 0; p < child.nodes.size(); ++p)
    if (cand[p] == 0) {
      if (t >= free_values.size()) throw InputError("parent supplied too few free values");
      cand[p] = free_values[t++];
    }
  if (t != free_values.size()) throw InputError("parent supplied too many free values");
  return cand;
}

LocalUpdateResult local_update(const IsingModel& model, const SubgraphSolution& child,
                               const std::vector<int>& frozen, const SpinAssignment& candidate,
                               const SpinAssignment& level_z, const DistributedConfig& config,
                               std::uint64_t seed) {
  LocalUpdateResult res{candidate, false, false};
  if (frozen.empty()) return res;

  // Everything outside the frozen set stays where the candidate / level put it.
  SpinAssignment fix = level_z;
  for (std::size_t p = 0; p < child.nodes.size(); ++p) fix[child.nodes[p]] = candidate[p];
  for (int u : frozen) fix[u] = 0;
  const SubModel sub = induced_submodel(model, frozen, fix);

  SpinAssignment current(frozen.size());
  for (std::size_t t = 0; t < frozen.size(); ++t) current[t] = candidate[position(child.nodes, frozen[t])];
  double best = sub.energy(current);
  SpinAssignment best_z = current;

  const SpinAssignment flip_part = flipped(current);
  if (const double e = sub.energy(flip_part); e < best) {
    best = e;
    best_z = flip_part;
  }

  res.truncated = candidate == child.local_z || candidate == flipped(child.local_z);
  if (!res.truncated || config.resolve_truncated) {
    const GroundState g = minimise(sub.with_boundary(), config, seed);
    if (const double e = sub.energy(g.z); e < best) {
      best = e;
      best_z = g.z;
      res.resolved = true;
    }
  }
  for (std::size_t t = 0; t < frozen.size(); ++t) res.z[position(child.nodes, frozen[t])] = best_z[t];
  return res;
}

IsingModel sign_model(const IsingModel& model, const Partition& partition,
                      const std::vector<SpinAssignment>& locals) {
  partition.validate(model.size());
  if (static_cast<int>(locals.size()) != partition.size()) throw InputError("one local solution per community");
  SpinAssignment z(model.size(), 0);
  for (int c = 0; c < partition.size(); ++c) {
    if (locals[c].size() != partition.communities[c].size()) throw InputError("local solution size mismatch");
    for (std::size_t t = 0; t < locals[c].size(); ++t) z[partition.communities[c][t]] = locals[c][t];
  }
  IsingModel s(partition.size());
  s.set_offset(model.offset());
  for (int u = 0; u < model.size(); ++u) s.add_linear(partition.community_of[u], model.linear(u) * z[u]);
  for (const auto& [ij, w] : model.couplings()) {
    const int a = partition.community_of[ij.first], b = partition.community_of[ij.second];
    const double wz = w * z[ij.first] * z[ij.second];
    if (a == b)
      s.add_offset(wz);
    else
      s.add_coupling(a, b, wz);
  }
  return s;
}

namespace {

std::vector<Spin> canonical(const IsingModel& m, std::vector<Spin> s) {
  if (!s.empty() && s[0] < 0) {
    auto f = flipped(s);
    if (energy(m, f) == energy(m, s)) return f;
  }
  return s;
}

// Signs for a sign model, recursing through chunks when it exceeds the cap.
std::vector<Spin> solve_signs(const IsingModel& s, SignSolver solver, const DistributedConfig& config,
                              std::uint64_t seed, int depth) {
  if (solver == SignSolver::Exhaustive) return canonical(s, brute_force_min(s).z);
  QaoaConfig qc = config.qaoa;
  if (s.size() <= config.q_cap) {
    qc.seed = derive_seed(seed, {static_cast<std::uint64_t>(depth)});
    return canonical(s, optimize(s, qc).best_bitstring);
  }
  const Partition chunks = louvain(s, config.q_cap, derive_seed(seed, {0xC0FFEEULL, static_cast<std::uint64_t>(depth)}));
  std::vector<SpinAssignment> locals(chunks.size());
  for (int c = 0; c < chunks.size(); ++c) {
    qc.seed = derive_seed(seed, {static_cast<std::uint64_t>(depth), static_cast<std::uint64_t>(c)});
    locals[c] = optimize(induced_model(s, chunks.communities[c]), qc).best_bitstring;
  }
  const IsingModel upper = sign_model(s, chunks, locals);
  if (upper.size() >= s.size()) {
    // No coarsening possible: keep the chunk solutions as they are.
    SpinAssignment out(s.size());
    for (int c = 0; c < chunks.size(); ++c)
      for (std::size_t t = 0; t < locals[c].size(); ++t) out[chunks.communities[c][t]] = locals[c][t];
    return out;
  }
  const auto upper_signs = solve_signs(upper, solver, config, seed, depth + 1);
  SpinAssignment out(s.size());
  for (int c = 0; c < chunks.size(); ++c)
    for (std::size_t t = 0; t < locals[c].size(); ++t)
      out[chunks.communities[c][t]] = static_cast<Spin>(upper_signs[c] * locals[c][t]);
  return canonical(s, out);
}

}  // namespace

NaiveResult naive_merge(const IsingModel& model, const Partition& partition,
                        const std::vector<SpinAssignment>& locals, SignSolver solver,
                        const DistributedConfig& config) {
  const IsingModel s = sign_model(model, partition, locals);
  NaiveResult res;
  res.signs = solve_signs(s, solver, config, derive_seed(config.seed, {0x5167ULL}), 0);
  res.z.assign(model.size(), 0);
  for (int c = 0; c < partition.size(); ++c)
    for (std::size_t t = 0; t < locals[c].size(); ++t)
      res.z[partition.communities[c][t]] = static_cast<Spin>(res.signs[c] * locals[c][t]);
  res.value = energy(model, res.z);
  return res;
}

namespace {

Partition initial_partition(const IsingModel& model, const DistributedConfig& config) {
  config.validate();
  if (model.size() == 0) throw InputError("model has no spins");
  if (model.size() <= config.q_cap) {
    std::vector<int> labels(model.size(), 0);
    return Partition::from_labels(labels, config.q_cap);
  }
  return make_partition(model, config.partition, config.q_cap, derive_seed(config.seed, {0x9A27ULL}));
}

QaoaConfig local_config(const DistributedConfig& config, int level, int group) {
  QaoaConfig qc = config.qaoa;
  qc.seed = derive_seed(config.seed, {static_cast<std::uint64_t>(level), static_cast<std::uint64_t>(group)});
  return qc;
}

}  // namespace

DistributedReport solve_distributed(const IsingModel& model, const DistributedConfig& config) {
  return solve_with_partition(model, initial_partition(model, config), config);
}

NaiveReport solve_naive(const IsingModel& model, const DistributedConfig& config, SignSolver solver) {
  NaiveReport rep;
  rep.partition = initial_partition(model, config);
  rep.modularity = modularity(model, rep.partition);
  const int m = rep.partition.size();
  rep.level1_locals.resize(m);
  std::vector<std::exception_ptr> failures(m);
#pragma omp parallel for schedule(dynamic, 1)
  for (int k = 0; k < m; ++k) try {
    rep.level1_locals[k] = solve_local(model, rep.partition.communities[k], local_config(config, 0, k)).local_z;
  } catch (...) {
    failures[k] = std::current_exception();
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  rep.result = naive_merge(model, rep.partition, rep.level1_locals, solver, config);
  return rep;
}

DistributedReport solve_with_partition(const IsingModel& model, const Partition& partition,
                                       const DistributedConfig& config,
                                       const std::vector<SpinAssignment>* level1_locals) {
  config.validate();
  partition.validate(model.size());
  if (partition.q_cap > config.q_cap) throw InputError("partition cap exceeds the configured q_cap");
  if (level1_locals && static_cast<int>(level1_locals->size()) != partition.size())
    throw InputError("one local solution per community");

  DistributedReport report;
  report.partition = partition;
  report.modularity = modularity(model, partition);

  std::vector<Level> levels;
  {
    Level first;
    first.graph = model;
    for (const auto& c : partition.communities) {
      Group g;
      g.sol.nodes = c;
      first.groups.push_back(std::move(g));
    }
    first.group_of = partition.community_of;
    levels.push_back(std::move(first));
  }

  // Bottom-up: solve, classify, contract, join.
  for (int li = 0;; ++li) {
    Level& level = levels[li];
    const auto ngroups = static_cast<int>(level.groups.size());
    std::vector<std::exception_ptr> failures(ngroups);
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < ngroups; ++k) try {
      auto& g = level.groups[k];
      if (li == 0 && level1_locals) {
        g.sol.local_z = (*level1_locals)[k];
        if (g.sol.local_z.size() != g.sol.nodes.size()) continue;
        g.sol.energy = energy(induced_model(level.graph, g.sol.nodes), g.sol.local_z);
      } else {
        g.sol = solve_local(level.graph, g.sol.nodes, local_config(config, li, k));
      }
    } catch (...) {
      failures[k] = std::current_exception();
    }
    for (const auto& f : failures)
      if (f) std::rethrow_exception(f);
    for (const auto& g : level.groups)
      if (g.sol.local_z.size() != g.sol.nodes.size()) throw InputError("local solution size mismatch");

    classify(level);
    bool any_active = false;
    for (auto& g : level.groups) {
      g.root = g.io.out_set.empty();
      g.frozen = g.io.in_set;
      g.free = g.io.out_set;
      any_active = any_active || !g.root;
    }
    if (!any_active) break;
    Level next = next_level(level, li, config.q_cap);
    levels.push_back(std::move(next));
  }
  if (level1_locals) report.level1_locals = *level1_locals;
  else
    for (const auto& g : levels[0].groups) report.level1_locals.push_back(g.sol.local_z);

  // Top-down: candidates from parents, then sequential local updates.
  std::vector<SpinAssignment> assign(levels.size());
  for (int li = static_cast<int>(levels.size()) - 1; li >= 0; --li) {
    Level& level = levels[li];
    SpinAssignment& z = assign[li];
    z.assign(level.graph.size(), 0);
    std::vector<SpinAssignment> cand(level.groups.size());
    for (std::size_t k = 0; k < level.groups.size(); ++k) {
      const auto& g = level.groups[k];
      if (g.root) {
        cand[k] = g.sol.local_z;
      } else {
        const SpinAssignment& up = assign[li + 1];
        const Spin s = g.rep >= 0 ? up[g.rep] : Spin{1};
        std::vector<Spin> free_values;
        for (int c : g.free_copy) free_values.push_back(up[c]);
        cand[k] = global_update(g.sol, g.frozen, s, free_values);
      }
      for (std::size_t p = 0; p < g.sol.nodes.size(); ++p) z[g.sol.nodes[p]] = cand[k][p];
    }
    for (std::size_t k = 0; k < level.groups.size(); ++k) {
      const auto& g = level.groups[k];
      if (g.root) continue;
      auto up = local_update(level.graph, g.sol, g.frozen, cand[k], z, config,
                             derive_seed(config.seed, {0x0DA7EULL, static_cast<std::uint64_t>(li), k}));
      ++report.local_updates;
      if (up.truncated) ++report.truncations;
      for (std::size_t p = 0; p < g.sol.nodes.size(); ++p) z[g.sol.nodes[p]] = up.z[p];
    }
  }

  for (std::size_t li = 0; li < levels.size(); ++li) {
    LevelReport lr;
    lr.level = static_cast<int>(li) + 1;
    lr.groups = static_cast<int>(levels[li].groups.size());
    lr.nodes = levels[li].graph.size();
    lr.roots = static_cast<int>(std::count_if(levels[li].groups.begin(), levels[li].groups.end(),
                                              [](const Group& g) { return g.root; }));
    lr.fallback_freezes = levels[li].fallback_freezes;
    lr.energy = energy(levels[li].graph, assign[li]);
    report.levels.push_back(lr);
  }
  report.tree_height = static_cast<int>(levels.size());
  report.z = assign[0];
  report.value = energy(model, report.z);
  return report;
}

double approximation_ratio(double v_max, double v_min, double achieved) {
  if (!(v_max > v_min)) throw InputError("approximation ratio needs v_max > v_min");
  return (v_max - achieved) / (v_max - v_min);
}

nlohmann::json report_to_json(const DistributedReport& report) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : report.levels)
    levels.push_back({{"level", l.level},
                      {"groups", l.groups},
                      {"nodes", l.nodes},
                      {"roots", l.roots},
                      {"fallback_freezes", l.fallback_freezes},
                      {"energy", l.energy}});
  std::vector<int> z(report.z.begin(), report.z.end());
  return {{"global_value", report.value},
          {"z", z},
          {"tree_height", report.tree_height},
          {"communities", report.partition.communities},
          {"modularity", report.modularity},
          {"local_updates", report.local_updates},
          {"truncations", report.truncations},
          {"per_level", levels}};
}

}  // namespace dqaoa
