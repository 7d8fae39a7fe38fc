// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "dqaoa/bench.hpp"
#include "dqaoa/cli.hpp"
#include "dqaoa/distributed.hpp"
#include "dqaoa/problem_io.hpp"
#include "dqaoa/qaoa.hpp"
#include "dqaoa/reduction.hpp"
#include "dqaoa/seeds.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace dqaoa;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kData = DQAOA_DATA_DIR;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void knapsack() {
  const auto t0 = Clock::now();
  const char* argv[] = {"dqaoa", "solve", nullptr, "--q", "10", "--mu", "10", "--lambda", "10", "--slack-bits", "2",
                        "--format", "json"};
  const std::string path = kData + "/ckp.pbo";
  argv[2] = path.c_str();
  std::ostringstream out, err;
  const int status = run_cli(13, argv, out, err);
  const double secs = seconds_since(t0);
  if (status != 0) {
    report(1, false, "solve exited with " + std::to_string(status) + ": " + err.str());
    return;
  }
  const auto j = nlohmann::json::parse(out.str());
  const double objective = j.at("objective");
  const std::string x = j.at("x");

  ReductionConfig rc;
  rc.mu = 10;
  rc.lambda = 10;
  rc.slack_bits = 2;
  const auto m = reduce_full(parse_problem(read_file(path)), rc).model;
  // Reference couplings over (z1, z2, z3, z4, z8, z9, z10).
  const double M[7][7] = {{0, 238, 216, 117.5, 40, 80, -35}, {0, 0, 149.5, 88.5, 30, 60, 0},
                          {0, 0, 0, 74, 25, 50, -35},        {0, 0, 0, 0, 15, 30, -1.75},
                          {0, 0, 0, 0, 0, 10, 0},            {0, 0, 0, 0, 0, 0, 0},
                          {0, 0, 0, 0, 0, 0, 0}};
  int mismatches = m.size() == 7 ? 0 : 49;
  for (int i = 0; i < 7 && m.size() == 7; ++i)
    for (int k = i + 1; k < 7; ++k) mismatches += m.coupling(i, k) != M[i][k];
  report(1, objective == 39.0 && x == "1011111" && mismatches == 0 && secs < 10.0,
         fmt("objective=%g x=%s coupling_mismatches=%d runtime=%.3fs", objective, x.c_str(), mismatches, secs));
}

void nine_node() {
  const auto m = parse_graph(read_file(kData + "/nine.graph"));
  std::map<int, int> hits;
  for (int q : {6, 10}) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      DistributedConfig c;
      c.q_cap = q;
      c.seed = s;
      hits[q] += solve_distributed(m, c).value == -10.0;
    }
  }
  const auto split = Partition::from_labels({0, 0, 0, 0, 0, 1, 1, 1, 1}, 6);
  const std::vector<SpinAssignment> locals{{-1, -1, 1, -1, -1}, {-1, 1, 1, -1}};
  DistributedConfig c;
  c.q_cap = 6;
  const double naive = naive_merge(m, split, locals, SignSolver::Exhaustive, c).value;
  const double opt = oracle::ising_min(m);
  report(2, hits[6] >= 19 && hits[10] >= 19 && naive == -6.0 && opt == -10.0,
         fmt("hits(q=6)=%d/20 hits(q=10)=%d/20 naive=%g optimum=%g", hits[6], hits[10], naive, opt));
}

ConstrainedProblem random_problem(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nv(2, 8), terms(2, 8), coef(-5, 5), coin(0, 2);
  for (;;) {
    ConstrainedProblem p;
    const int n = nv(rng);
    for (int k = 0; k < n; ++k) p.variable_names.push_back("x" + std::to_string(k + 1));
    p.objective = oracle::random_poly(rng, n, 3, terms(rng), -5, 5);
    p.sense = coin(rng) == 0 ? Sense::Maximize : Sense::Minimize;
    if (coin(rng) != 0) {
      MultilinearPolynomial g;
      for (int k = 0; k < n; ++k) g.add_term({k}, coef(rng));
      g.add_term({}, coef(rng));
      p.constraints.push_back({g, ConstraintKind::LeqZero});
    }
    if (!std::isnan(oracle::constrained_opt(p))) return p;
  }
}

void reduction_soundness() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  int exact = 0, max_spins = 0;
  for (int t = 0; t < 200; ++t) {
    const auto p = random_problem(rng);
    const auto rr = reduce_full(p);
    max_spins = std::max(max_spins, rr.model.size());
    const auto g = brute_force_min(rr.model);
    const auto rec = reconstruct(rr.trace, g.z, false);
    exact += rec.feasible && rec.objective == oracle::constrained_opt(p);
  }
  const double secs = seconds_since(t0);
  report(3, exact == 200 && secs < 60.0, fmt("exact=%d/200 max_reduced_spins=%d runtime=%.2fs", exact, max_spins, secs));
}

IsingModel random_real_ising(std::mt19937_64& rng, int n, double density) {
  IsingModel m(n);
  std::bernoulli_distribution edge(density), field(0.5);
  std::uniform_real_distribution<double> w(-5.0, 5.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edge(rng)) m.add_coupling(i, j, w(rng));
  for (int k = 0; k < n; ++k)
    if (field(rng)) m.add_linear(k, w(rng));
  return m;
}

void per_stage() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> nv(2, 10), terms(2, 9);
  int uncoupled = 0, gadget = 0, chains = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = nv(rng);
    const auto p = oracle::random_poly(rng, n, 3, terms(rng), -5, 5);
    uncoupled += oracle::poly_min(eliminate_uncoupled(p).poly, n) == oracle::poly_min(p, n);
  }
  for (int t = 0; t < 100; ++t) {
    const int n = std::uniform_int_distribution<int>(3, 8)(rng);
    const auto p = oracle::random_poly(rng, n, 4, terms(rng), -5, 5);
    const auto q = t % 2 == 0 ? quadratize(p, std::nullopt, n) : quadratize(p, 10.0, n);
    const int total = std::max(n, q.poly.max_var() + 1);
    gadget += q.poly.degree() <= 2 && oracle::poly_min(q.poly, total) == oracle::poly_min(p, n);
  }
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = nv(rng);
    const bool integer = t % 2 == 0;
    const auto m = integer ? oracle::random_ising(rng, n, 0.3, 5, 0.5) : random_real_ising(rng, n, 0.3);
    const auto ce = eliminate_chains(m);
    const double full = oracle::ising_min(m);
    const double reduced = oracle::ising_min(ce.model);
    const double expanded = oracle::ising_value(m, expand_chains(ce, brute_force_min(ce.model).z));
    const double err = std::max(std::abs(reduced - full), std::abs(expanded - full));
    if (integer)
      chains += err == 0.0;
    else {
      chains += err <= 1e-9;
      worst = std::max(worst, err);
    }
  }
  report(4, uncoupled == 100 && gadget == 100 && chains == 100,
         fmt("uncoupled=%d/100 gadget=%d/100 chains=%d/100 max_float_error=%.1e", uncoupled, gadget, chains, worst));
}

void dominance() {
  int ok = 0, strict = 0, strict_weighted = 0, max_height = 0;
  for (int t = 0; t < 50; ++t) {
    const bool weighted = t % 2 == 1;
    int n = 12 + t % 13;
    n += n % 2;
    const auto g = t % 4 < 2 ? gen_er(n, 3.0, weighted, {1, 6}, 1000 + t) : gen_regular(n, 3, weighted, {1, 6}, 1000 + t);
    DistributedConfig c;
    c.q_cap = 6;
    c.seed = t;
    const auto part = louvain(g, 6, t);
    const auto ours = solve_with_partition(g, part, c);
    const double naive = naive_merge(g, part, ours.level1_locals, SignSolver::Exhaustive, c).value;
    ok += ours.value <= naive;
    if (ours.value < naive) {
      ++strict;
      strict_weighted += weighted;
    }
    if (ours.value > naive) max_height = std::max(max_height, ours.tree_height);
  }
  report(5, ok == 50 && strict_weighted >= 1,
         fmt("dominates=%d/50 strict=%d strict_weighted=%d max_tree_height_of_violations=%d", ok, strict,
             strict_weighted, max_height));
}

std::vector<oracle::cd> dense_ansatz(const IsingModel& m, const QaoaParams& params) {
  const std::size_t d = std::size_t{1} << m.size();
  std::vector<oracle::cd> v(d, 1.0 / std::sqrt(static_cast<double>(d)));
  const auto h = oracle::cost_matrix(m);
  const auto b = oracle::mixer_matrix(m.size());
  for (std::size_t l = 0; l < params.gamma.size(); ++l) {
    auto mh = h, mb = b;
    for (auto& row : mh)
      for (auto& x : row) x *= oracle::cd(0.0, -params.gamma[l]);
    for (auto& row : mb)
      for (auto& x : row) x *= oracle::cd(0.0, -params.beta[l]);
    v = oracle::apply(oracle::expm(mb), oracle::apply(oracle::expm(mh), v));
  }
  return v;
}

void fidelity() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> ang(-3.5, 3.5);
  double ansatz_err = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 4;
    const int depth = 1 + (t / 4) % 3;
    const auto m = oracle::random_ising(rng, n, 0.7, 4, 0.7);
    QaoaParams p;
    for (int l = 0; l < depth; ++l) {
      p.gamma.push_back(ang(rng));
      p.beta.push_back(ang(rng));
    }
    const auto s = ansatz_state(hamiltonian_diagonal(m), p);
    const auto ref = dense_ansatz(m, p);
    for (std::size_t b = 0; b < s.size(); ++b) ansatz_err = std::max(ansatz_err, std::abs(s[b] - ref[b]));
  }
  const auto m = oracle::random_ising(rng, 10, 0.4, 5, 0.5);
  const auto diag = hamiltonian_diagonal(m);
  auto s = uniform_state(10);
  for (int l = 0; l < 100; ++l) {
    apply_phase(s, ang(rng), diag);
    apply_mixer(s, ang(rng));
  }
  const double norm_err = std::abs(norm_squared(s) - 1.0);
  double mean = 0.0;
  for (double x : diag) mean += x;
  mean /= static_cast<double>(diag.size());
  const double mean_err = std::abs(expectation(uniform_state(10), diag) - mean);
  report(6, ansatz_err <= 1e-10 && norm_err <= 1e-10 && mean_err <= 1e-12,
         fmt("ansatz_err=%.1e norm_err=%.1e uniform_mean_err=%.1e", ansatz_err, norm_err, mean_err));
}

IsingModel class_graph(GraphClass cls, int n, std::uint64_t seed) {
  switch (cls) {
    case GraphClass::UR: return gen_regular(n, 5, false, {1, 6}, seed);
    case GraphClass::WR: return gen_regular(n, 5, true, {1, 6}, seed);
    case GraphClass::UE: return gen_er(n, 5.0, false, {1, 6}, seed);
    case GraphClass::WE: return gen_er(n, 5.0, true, {1, 6}, seed);
  }
  return IsingModel(0);
}

void modularity_checks() {
  std::mt19937_64 rng(707);
  double gain_err = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 12;
    const auto m = oracle::random_ising(rng, n, 0.3, 5, 0.0);
    std::uniform_int_distribution<int> lab(0, 3), node(0, n - 1);
    std::vector<int> before(n);
    for (auto& l : before) l = lab(rng);
    const int i = node(rng);
    auto after = before;
    after[i] = (before[i] + 1 + lab(rng) % 3) % 4;
    // Move = leave the old community, then join the new one.
    auto isolated = before;
    isolated[i] = 100;
    const auto p = Partition::from_labels(isolated, n);
    auto community_with = [&](int label) {
      for (int k = 0; k < n; ++k)
        if (k != i && before[k] == label) return p.community_of[k];
      return -1;
    };
    const int from = community_with(before[i]), to = community_with(after[i]);
    const double dq = (to < 0 ? 0.0 : modularity_gain(m, p, i, to)) - (from < 0 ? 0.0 : modularity_gain(m, p, i, from));
    gain_err = std::max(gain_err, std::abs(dq - (oracle::modularity(m, after) - oracle::modularity(m, before))));
  }

  bool monotone = true;
  std::string ordering;
  bool ordered = true;
  for (GraphClass cls : {GraphClass::UR, GraphClass::WR, GraphClass::UE, GraphClass::WE}) {
    double ql = 0.0, qg = 0.0, qr = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto g = class_graph(cls, 60, derive_seed(s, {0x3C, static_cast<std::uint64_t>(cls)}));
      std::vector<double> hist;
      ql += modularity(g, louvain(g, 10, s, &hist));
      for (std::size_t k = 1; k < hist.size(); ++k) monotone = monotone && hist[k] >= hist[k - 1] - 1e-12;
      qg += modularity(g, greedy_modularity(g, 10));
      qr += modularity(g, random_partition(g, 10, s));
    }
    ordered = ordered && ql >= qg && qg >= qr;
    ordering += fmt(" %s:%.4f/%.4f/%.4f", class_name(cls), ql / 20, qg / 20, qr / 20);
  }
  report(7, gain_err <= 1e-10 && monotone && ordered,
         fmt("max_dQ_err=%.1e sweeps_monotone=%s mean_Q(louvain/greedy/random)%s", gain_err,
             monotone ? "yes" : "no", ordering.c_str()));
}

void desk_trend() {
  const auto t0 = Clock::now();
  BenchSpec s;
  s.n = 40;
  s.degree = 5;
  s.avg_degree = 5;
  s.q_cap = 8;
  s.methods = {"ours-louvain", "naive-louvain", "ours-random"};
  for (std::uint64_t k = 0; k < 20; ++k) s.seeds.push_back(k);
  s.denominator = "best-found";
  const auto r = run_benchmark(s);
  const double secs = seconds_since(t0);

  std::map<std::pair<std::string, std::string>, double> mean;
  for (const auto& b : r.summary) mean[{b.cls, b.method}] = b.mean;
  bool beats_naive = true, beats_random = true;
  std::map<std::string, double> gap;
  std::string detail;
  for (const char* c : {"UR", "WR", "UE", "WE"}) {
    const double ours = mean[{c, "ours-louvain"}], naive = mean[{c, "naive-louvain"}], rnd = mean[{c, "ours-random"}];
    beats_naive = beats_naive && ours >= naive;
    beats_random = beats_random && ours >= rnd;
    gap[c] = ours - naive;
    detail += fmt(" %s:%.4f/%.4f/%.4f", c, ours, naive, rnd);
  }
  const bool weighted_gap = gap["WR"] >= gap["UR"] || gap["WE"] >= gap["UE"];
  std::map<std::string, int> provenance;
  for (const auto& d : r.denominators) ++provenance[d.provenance.substr(0, d.provenance.find(':'))];
  report(8, beats_naive && beats_random && weighted_gap && secs < 1800.0,
         fmt("mean_r(ours/naive/ours-random)%s gaps UR=%.4f WR=%.4f UE=%.4f WE=%.4f denominators best-found=%d "
             "runtime=%.1fs",
             detail.c_str(), gap["UR"], gap["WR"], gap["UE"], gap["WE"], provenance["best-found"], secs));
}

}  // namespace

int main() {
  knapsack();
  nine_node();
  reduction_soundness();
  per_stage();
  dominance();
  fidelity();
  modularity_checks();
  desk_trend();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
