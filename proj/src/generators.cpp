#include "dqaoa/generators.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "dqaoa/error.hpp"

namespace dqaoa {

namespace {

void check_range(bool weighted, WeightRange range) {
  if (weighted && range.lo > range.hi) throw InputError("empty weight range");
}

IsingModel build(int n, const std::set<std::pair<int, int>>& edges, bool weighted, WeightRange range,
                 std::mt19937_64& rng) {
  IsingModel m(n);
  std::uniform_int_distribution<int> w(range.lo, range.hi);
  for (const auto& [i, j] : edges) m.add_coupling(i, j, weighted ? w(rng) : 1.0);
  return m;
}

// One attempt of the pairing process; false if it got stuck.
bool try_pairing(int n, int d, std::mt19937_64& rng, std::set<std::pair<int, int>>& edges) {
  edges.clear();
  std::vector<int> points;
  for (int v = 0; v < n; ++v)
    for (int k = 0; k < d; ++k) points.push_back(v);
  auto suitable = [&](int a, int b) { return a != b && !edges.count({std::min(a, b), std::max(a, b)}); };
  while (!points.empty()) {
    bool paired = false;
    const std::size_t tries = 50 * points.size();
    for (std::size_t t = 0; t < tries && !paired; ++t) {
      std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
      std::size_t x = pick(rng), y = pick(rng);
      if (x == y || !suitable(points[x], points[y])) continue;
      edges.insert({std::min(points[x], points[y]), std::max(points[x], points[y])});
      if (x < y) std::swap(x, y);
      points.erase(points.begin() + static_cast<std::ptrdiff_t>(x));
      points.erase(points.begin() + static_cast<std::ptrdiff_t>(y));
      paired = true;
    }
    if (!paired) return false;
  }
  return true;
}

}  // namespace

IsingModel gen_regular(int n, int d, bool weighted, WeightRange range, std::uint64_t seed) {
  if (n < 1 || d < 0) throw InputError("need n >= 1 and d >= 0");
  if (d >= n) throw InputError("degree must be smaller than the node count");
  if ((static_cast<long long>(n) * d) % 2 != 0) throw InputError("n * d must be even for a regular graph");
  check_range(weighted, range);
  std::mt19937_64 rng(seed);
  std::set<std::pair<int, int>> edges;
  for (int attempt = 0; attempt < 10000; ++attempt)
    if (try_pairing(n, d, rng, edges)) return build(n, edges, weighted, range, rng);
  throw InputError("failed to sample a " + std::to_string(d) + "-regular graph on " + std::to_string(n) + " nodes");
}

IsingModel gen_er(int n, double avg_degree, bool weighted, WeightRange range, std::uint64_t seed) {
  if (n < 2) throw InputError("need at least two nodes");
  if (!(avg_degree > 0.0) || !(avg_degree < n)) throw InputError("average degree must lie in (0, n)");
  return gen_er_p(n, std::min(1.0, avg_degree / (n - 1)), weighted, range, seed);
}

IsingModel gen_er_p(int n, double p, bool weighted, WeightRange range, std::uint64_t seed) {
  if (n < 0) throw InputError("negative node count");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  check_range(weighted, range);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(p);
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (keep(rng)) edges.insert({i, j});
  return build(n, edges, weighted, range, rng);
}

double cut_value(const IsingModel& model, std::span<const Spin> z) {
  double total = 0.0;
  for (const auto& [ij, w] : model.couplings()) total += w;
  return (total - energy(model, z) + model.offset()) / 2.0;
}

}  // namespace dqaoa
