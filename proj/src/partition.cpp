#include "dqaoa/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "dqaoa/error.hpp"

namespace dqaoa {

namespace {

constexpr double kGainEpsilon = 1e-12;

// Weighted graph with self-loops. loop[i] holds the ordered-pair weight A_ii.
struct Graph {
  int n = 0;
  std::vector<std::map<int, double>> adj;
  std::vector<double> loop;
  std::vector<double> degree;
  std::vector<int> size;
  double two_m = 0.0;

  static Graph from_model(const IsingModel& model) {
    Graph g;
    g.n = model.size();
    g.adj.resize(g.n);
    g.loop.assign(g.n, 0.0);
    g.size.assign(g.n, 1);
    for (const auto& [ij, w] : model.couplings()) {
      g.adj[ij.first][ij.second] += std::abs(w);
      g.adj[ij.second][ij.first] += std::abs(w);
    }
    g.finish();
    return g;
  }

  void finish() {
    degree.assign(n, 0.0);
    two_m = 0.0;
    for (int i = 0; i < n; ++i) {
      degree[i] = loop[i];
      for (const auto& [j, w] : adj[i]) degree[i] += w;
      two_m += degree[i];
    }
  }

  double modularity(const std::vector<int>& comm) const {
    if (two_m <= 0.0) return 0.0;
    const int k = comm.empty() ? 0 : *std::max_element(comm.begin(), comm.end()) + 1;
    std::vector<double> in(k, 0.0), tot(k, 0.0);
    for (int i = 0; i < n; ++i) {
      tot[comm[i]] += degree[i];
      in[comm[i]] += loop[i];
      for (const auto& [j, w] : adj[i])
        if (comm[j] == comm[i]) in[comm[i]] += w;
    }
    double q = 0.0;
    for (int c = 0; c < k; ++c) q += in[c] / two_m - (tot[c] / two_m) * (tot[c] / two_m);
    return q;
  }
};

std::vector<int> dense_labels(const std::vector<int>& labels) {
  std::map<int, int> remap;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = remap.try_emplace(labels[i], static_cast<int>(remap.size()));
    out[i] = it->second;
  }
  return out;
}

// One run of local moves. Returns true if any node changed community.
bool local_moves(const Graph& g, std::vector<int>& comm, int q_cap, std::mt19937_64& rng,
                 const Graph* original_for_history, const std::vector<int>* base_map,
                 std::vector<double>* history) {
  std::vector<double> tot(g.n, 0.0);
  std::vector<int> csize(g.n, 0);
  for (int i = 0; i < g.n; ++i) {
    tot[comm[i]] += g.degree[i];
    csize[comm[i]] += g.size[i];
  }
  std::vector<int> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  const double m = g.two_m / 2.0;
  bool any = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i : order) {
      const int old = comm[i];
      std::map<int, double> links;
      for (const auto& [j, w] : g.adj[i]) links[comm[j]] += w;
      tot[old] -= g.degree[i];
      csize[old] -= g.size[i];
      auto gain = [&](int c) {
        auto it = links.find(c);
        const double kin = it == links.end() ? 0.0 : it->second;
        return kin / m - tot[c] * g.degree[i] / (2.0 * m * m);
      };
      int best = old;
      double best_gain = gain(old);
      const double stay = best_gain;
      for (const auto& [c, w] : links) {
        if (c == old || csize[c] + g.size[i] > q_cap) continue;
        const double gc = gain(c);
        if (gc > best_gain) {
          best_gain = gc;
          best = c;
        }
      }
      if (best != old && best_gain > stay + kGainEpsilon) {
        comm[i] = best;
        moved = true;
        any = true;
      }
      tot[comm[i]] += g.degree[i];
      csize[comm[i]] += g.size[i];
    }
    if (moved && history) {
      std::vector<int> flat(base_map->size());
      for (std::size_t v = 0; v < flat.size(); ++v) flat[v] = comm[(*base_map)[v]];
      history->push_back(original_for_history->modularity(flat));
    }
  }
  return any;
}

Graph aggregate(const Graph& g, const std::vector<int>& comm, int k) {
  Graph h;
  h.n = k;
  h.adj.resize(k);
  h.loop.assign(k, 0.0);
  h.size.assign(k, 0);
  for (int i = 0; i < g.n; ++i) {
    h.size[comm[i]] += g.size[i];
    h.loop[comm[i]] += g.loop[i];
    for (const auto& [j, w] : g.adj[i]) {
      if (comm[j] == comm[i])
        h.loop[comm[i]] += w;
      else
        h.adj[comm[i]][comm[j]] += w;
    }
  }
  h.finish();
  return h;
}

}  // namespace

Partition Partition::from_labels(const std::vector<int>& labels, int q_cap) {
  // Order communities by smallest member: first appearance while scanning nodes in order.
  Partition p;
  p.q_cap = q_cap;
  p.community_of = dense_labels(labels);
  const int k = p.community_of.empty() ? 0 : *std::max_element(p.community_of.begin(), p.community_of.end()) + 1;
  p.communities.assign(k, {});
  for (std::size_t i = 0; i < labels.size(); ++i) p.communities[p.community_of[i]].push_back(static_cast<int>(i));
  return p;
}

void Partition::validate(int n) const {
  if (static_cast<int>(community_of.size()) != n) throw InputError("partition does not cover every node");
  std::vector<int> seen(n, 0);
  for (std::size_t c = 0; c < communities.size(); ++c) {
    if (communities[c].empty()) throw InputError("empty community");
    if (q_cap > 0 && static_cast<int>(communities[c].size()) > q_cap) throw InputError("community exceeds the cap");
    for (int v : communities[c]) {
      if (v < 0 || v >= n || seen[v]++) throw InputError("communities overlap or reference unknown nodes");
      if (community_of[v] != static_cast<int>(c)) throw InputError("community map is inconsistent");
    }
  }
}

double modularity(const IsingModel& model, const Partition& partition) {
  partition.validate(model.size());
  return Graph::from_model(model).modularity(partition.community_of);
}

double modularity_gain(const IsingModel& model, const Partition& partition, int i, int target) {
  partition.validate(model.size());
  if (target < 0 || target >= partition.size()) throw InputError("unknown target community");
  if (partition.community_of[i] == target) throw InputError("target community already contains the node");
  if (partition.communities[partition.community_of[i]].size() != 1) throw InputError("node must be isolated first");
  const Graph g = Graph::from_model(model);
  if (g.two_m <= 0.0) return 0.0;
  const double m = g.two_m / 2.0;
  double kin = 0.0, tot = 0.0;
  for (int u : partition.communities[target]) {
    tot += g.degree[u];
    auto it = g.adj[i].find(u);
    if (it != g.adj[i].end()) kin += it->second;
  }
  return kin / m - tot * g.degree[i] / (2.0 * m * m);
}

Partition louvain(const IsingModel& model, int q_cap, std::uint64_t seed, std::vector<double>* q_history) {
  if (q_cap < 1) throw InputError("q_cap must be at least 1");
  const Graph original = Graph::from_model(model);
  std::mt19937_64 rng(seed);
  Graph g = original;
  // node_of[v] = super-node holding original node v.
  std::vector<int> node_of(original.n);
  std::iota(node_of.begin(), node_of.end(), 0);
  if (q_history) q_history->push_back(original.modularity(node_of));

  while (g.n > 0) {
    std::vector<int> comm(g.n);
    std::iota(comm.begin(), comm.end(), 0);
    if (!local_moves(g, comm, q_cap, rng, &original, &node_of, q_history)) break;
    comm = dense_labels(comm);
    const int k = *std::max_element(comm.begin(), comm.end()) + 1;
    g = aggregate(g, comm, k);
    for (auto& v : node_of) v = comm[v];
    if (q_history) q_history->push_back(original.modularity(node_of));
  }
  // Single-node refinement on the original graph; super-nodes near the cap cannot move.
  std::vector<int> identity(original.n);
  std::iota(identity.begin(), identity.end(), 0);
  node_of = dense_labels(node_of);
  local_moves(original, node_of, q_cap, rng, &original, &identity, q_history);
  Partition p = Partition::from_labels(node_of, q_cap);
  p.validate(model.size());
  return p;
}

Partition random_partition(const IsingModel& model, int q_cap, std::uint64_t seed) {
  if (q_cap < 1) throw InputError("q_cap must be at least 1");
  std::vector<int> order(model.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> labels(model.size());
  for (std::size_t t = 0; t < order.size(); ++t) labels[order[t]] = static_cast<int>(t) / q_cap;
  return Partition::from_labels(labels, q_cap);
}

Partition greedy_modularity(const IsingModel& model, int q_cap) {
  if (q_cap < 1) throw InputError("q_cap must be at least 1");
  const Graph g = Graph::from_model(model);
  const int n = g.n;
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  if (g.two_m <= 0.0) return Partition::from_labels(label, q_cap);

  // e[a][b]: fraction of ordered edge weight from a to b; a_tot[a]: fraction of degree.
  std::vector<std::map<int, double>> e(n);
  std::vector<double> a_tot(n);
  std::vector<int> csize(n, 1);
  std::vector<bool> alive(n, true);
  for (int i = 0; i < n; ++i) {
    a_tot[i] = g.degree[i] / g.two_m;
    for (const auto& [j, w] : g.adj[i]) e[i][j] = w / g.two_m;
  }
  while (true) {
    int ba = -1, bb = -1;
    double best = kGainEpsilon;
    for (int a = 0; a < n; ++a) {
      if (!alive[a]) continue;
      for (const auto& [b, eab] : e[a]) {
        if (b <= a || csize[a] + csize[b] > q_cap) continue;
        const double dq = 2.0 * (eab - a_tot[a] * a_tot[b]);
        if (dq > best) {
          best = dq;
          ba = a;
          bb = b;
        }
      }
    }
    if (ba < 0) break;
    // Merge bb into ba.
    for (const auto& [c, w] : e[bb]) {
      if (c == ba) continue;
      e[ba][c] += w;
      e[c][ba] += w;
      e[c].erase(bb);
    }
    e[ba].erase(bb);
    e[bb].clear();
    a_tot[ba] += a_tot[bb];
    csize[ba] += csize[bb];
    alive[bb] = false;
    for (auto& l : label)
      if (l == bb) l = ba;
  }
  return Partition::from_labels(label, q_cap);
}

}  // namespace dqaoa
