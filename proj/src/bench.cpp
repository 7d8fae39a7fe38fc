#include "dqaoa/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <sstream>

#include "dqaoa/error.hpp"
#include "dqaoa/format.hpp"
#include "dqaoa/reduction.hpp"
#include "dqaoa/seeds.hpp"

namespace dqaoa {

const char* const kBenchCsvHeader = "class,method,seed,n,q,r,value,Q_modularity,tree_height,runtime_ms";

namespace {

const std::vector<std::string> kMethods{"ours-louvain", "ours-random", "ours-greedy",
                                        "naive-louvain", "naive-random", "naive-greedy"};

PartitionMethod method_partition(const std::string& method) {
  const auto dash = method.find('-');
  const std::string p = method.substr(dash + 1);
  if (p == "louvain") return PartitionMethod::Louvain;
  if (p == "random") return PartitionMethod::Random;
  return PartitionMethod::Greedy;
}

double total_weight(const IsingModel& g) {
  double w = 0.0;
  for (const auto& [ij, x] : g.couplings()) w += x;
  return w;
}

double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

void BenchSpec::validate() const {
  if (classes.empty()) throw InputError("bench: no graph classes");
  if (n < 2) throw InputError("bench: n must be at least 2");
  if (seeds.empty()) throw InputError("bench: no seeds");
  if (methods.empty()) throw InputError("bench: no methods");
  for (const auto& m : methods)
    if (std::find(kMethods.begin(), kMethods.end(), m) == kMethods.end())
      throw InputError("bench: unknown method '" + m + "'");
  if (denominator != "auto" && denominator != "best-found")
    throw InputError("bench: denominator must be auto or best-found");
  if (weight_range.lo > weight_range.hi) throw InputError("bench: empty weight range");
  DistributedConfig dc;
  dc.q_cap = q_cap;
  dc.qaoa = qaoa;
  dc.validate();
}

const char* class_name(GraphClass c) {
  switch (c) {
    case GraphClass::UR: return "UR";
    case GraphClass::WR: return "WR";
    case GraphClass::UE: return "UE";
    case GraphClass::WE: return "WE";
  }
  return "?";
}

GraphClass parse_class(const std::string& name) {
  if (name == "UR") return GraphClass::UR;
  if (name == "WR") return GraphClass::WR;
  if (name == "UE") return GraphClass::UE;
  if (name == "WE") return GraphClass::WE;
  throw InputError("unknown graph class '" + name + "'");
}

BenchSpec bench_spec_from_json(const nlohmann::json& j) {
  BenchSpec s;
  try {
    if (j.contains("classes")) {
      s.classes.clear();
      for (const auto& c : j.at("classes")) s.classes.push_back(parse_class(c.get<std::string>()));
    }
    s.n = j.value("n", s.n);
    s.degree = j.value("degree", s.degree);
    s.avg_degree = j.value("avg_degree", s.avg_degree);
    if (j.contains("weight_range")) {
      const auto& wr = j.at("weight_range");
      if (!wr.is_array() || wr.size() != 2) throw InputError("bench: weight_range must be [lo, hi]");
      s.weight_range = {wr[0].get<int>(), wr[1].get<int>()};
    }
    s.q_cap = j.value("q_cap", s.q_cap);
    if (j.contains("methods")) s.methods = j.at("methods").get<std::vector<std::string>>();
    if (j.contains("seeds")) {
      const auto& sd = j.at("seeds");
      if (sd.is_number_integer()) {
        const int count = sd.get<int>();
        if (count < 1) throw InputError("bench: seed count must be positive");
        for (int k = 0; k < count; ++k) s.seeds.push_back(static_cast<std::uint64_t>(k));
      } else {
        s.seeds = sd.get<std::vector<std::uint64_t>>();
      }
    }
    if (j.contains("qaoa")) {
      const auto& q = j.at("qaoa");
      s.qaoa.p = q.value("p", s.qaoa.p);
      s.qaoa.iterations = q.value("iterations", s.qaoa.iterations);
      s.qaoa.restarts = q.value("restarts", s.qaoa.restarts);
      s.qaoa.shots = q.value("shots", s.qaoa.shots);
    }
    s.denominator = j.value("denominator", s.denominator);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bench spec: ") + e.what());
  }
  return s;
}

IsingModel generate_class(const BenchSpec& spec, GraphClass c, std::uint64_t seed) {
  const std::uint64_t gs = derive_seed(seed, {0x6EA9ULL, static_cast<std::uint64_t>(c)});
  switch (c) {
    case GraphClass::UR: return gen_regular(spec.n, spec.degree, false, spec.weight_range, gs);
    case GraphClass::WR: return gen_regular(spec.n, spec.degree, true, spec.weight_range, gs);
    case GraphClass::UE: return gen_er(spec.n, spec.avg_degree, false, spec.weight_range, gs);
    case GraphClass::WE: return gen_er(spec.n, spec.avg_degree, true, spec.weight_range, gs);
  }
  throw InputError("unknown graph class");
}

MethodOutcome run_method(const IsingModel& graph, const std::string& method, const DistributedConfig& config) {
  if (std::find(kMethods.begin(), kMethods.end(), method) == kMethods.end())
    throw InputError("unknown method '" + method + "'");
  const ChainElimination chains = eliminate_chains(graph);
  MethodOutcome out;
  SpinAssignment reduced;
  if (chains.model.size() > 0) {
    DistributedConfig dc = config;
    dc.partition = method_partition(method);
    if (method.starts_with("ours")) {
      const auto rep = solve_distributed(chains.model, dc);
      reduced = rep.z;
      out.modularity = rep.modularity;
      out.tree_height = rep.tree_height;
    } else {
      const auto rep = solve_naive(chains.model, dc, SignSolver::Qaoa);
      reduced = rep.result.z;
      out.modularity = rep.modularity;
      out.tree_height = 2;
      if (rep.partition.size() == 1) out.tree_height = 1;
    }
  }
  out.z = expand_chains(chains, reduced);
  return out;
}

BoxStats box_stats(std::vector<double> values) {
  BoxStats b;
  b.count = static_cast<int>(values.size());
  if (values.empty()) return b;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  b.mean = sum / static_cast<double>(values.size());
  b.median = quantile(values, 0.5);
  b.q1 = quantile(values, 0.25);
  b.q3 = quantile(values, 0.75);
  const double iqr = b.q3 - b.q1;
  b.lower_fence = b.q1 - 1.5 * iqr;
  b.upper_fence = b.q3 + 1.5 * iqr;
  return b;
}

BenchResult run_benchmark(const BenchSpec& spec) {
  spec.validate();
  const int nc = static_cast<int>(spec.classes.size());
  const int ns = static_cast<int>(spec.seeds.size());
  const int nm = static_cast<int>(spec.methods.size());
  const bool exact = spec.denominator == "auto" && spec.n <= kBruteForceCap;

  // One unit per (class, seed): the graph is shared by every method.
  std::vector<std::vector<BenchRow>> unit_rows(nc * ns);
  std::vector<Denominator> denoms(nc * ns);
  std::vector<std::exception_ptr> failures(nc * ns);
#pragma omp parallel for schedule(dynamic, 1)
  for (int u = 0; u < nc * ns; ++u) try {
    const GraphClass c = spec.classes[u / ns];
    const std::uint64_t seed = spec.seeds[u % ns];
    const IsingModel g = generate_class(spec, c, seed);
    const double w = total_weight(g);

    auto& rows = unit_rows[u];
    std::vector<double> energies;
    for (int k = 0; k < nm; ++k) {
      DistributedConfig dc;
      dc.q_cap = spec.q_cap;
      dc.qaoa = spec.qaoa;
      dc.seed = derive_seed(seed, {0xBE4CULL, static_cast<std::uint64_t>(c)});
      dc.qaoa.seed = dc.seed;
      const auto t0 = std::chrono::steady_clock::now();
      const MethodOutcome o = run_method(g, spec.methods[k], dc);
      const auto t1 = std::chrono::steady_clock::now();
      BenchRow row;
      row.cls = class_name(c);
      row.method = spec.methods[k];
      row.seed = seed;
      row.n = g.size();
      row.q = spec.q_cap;
      row.value = cut_value(g, o.z);
      row.modularity = o.modularity;
      row.tree_height = o.tree_height;
      row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      rows.push_back(row);
      energies.push_back(energy(g, o.z));
    }

    Denominator& d = denoms[u];
    d.cls = class_name(c);
    d.seed = seed;
    double best_energy;
    if (exact) {
      best_energy = brute_force_min(g).value;
      d.provenance = "exhaustive";
    } else {
      const auto it = std::min_element(energies.begin(), energies.end());
      best_energy = *it;
      d.provenance = "best-found:" + spec.methods[static_cast<std::size_t>(it - energies.begin())];
    }
    d.best_cut = (w - best_energy) / 2.0;
    // r = cut / best cut, i.e. (W - E) / (W - E_best) with W the energy of the empty cut.
    for (std::size_t k = 0; k < rows.size(); ++k)
      rows[k].r = w > best_energy ? approximation_ratio(w, best_energy, energies[k]) : 1.0;
  } catch (...) {
    failures[u] = std::current_exception();
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  BenchResult res;
  res.denominators = denoms;
  for (int ci = 0; ci < nc; ++ci)
    for (int k = 0; k < nm; ++k) {
      std::vector<double> rs;
      for (int si = 0; si < ns; ++si) {
        const BenchRow& row = unit_rows[ci * ns + si][k];
        res.rows.push_back(row);
        rs.push_back(row.r);
      }
      BoxStats b = box_stats(rs);
      b.cls = class_name(spec.classes[ci]);
      b.method = spec.methods[k];
      res.summary.push_back(b);
    }
  return res;
}

std::string bench_to_csv(const BenchResult& result) {
  std::ostringstream os;
  os << kBenchCsvHeader << '\n';
  for (const auto& r : result.rows)
    os << r.cls << ',' << r.method << ',' << r.seed << ',' << r.n << ',' << r.q << ',' << format_number(r.r) << ','
       << format_number(r.value) << ',' << format_number(r.modularity) << ',' << r.tree_height << ','
       << format_number(std::round(r.runtime_ms * 1000.0) / 1000.0) << '\n';
  os << "\n# summary\nclass,method,count,mean,median,q1,q3,lower_fence,upper_fence\n";
  for (const auto& b : result.summary)
    os << b.cls << ',' << b.method << ',' << b.count << ',' << format_number(b.mean) << ','
       << format_number(b.median) << ',' << format_number(b.q1) << ',' << format_number(b.q3) << ','
       << format_number(b.lower_fence) << ',' << format_number(b.upper_fence) << '\n';
  os << "\n# denominators\nclass,seed,best_cut,provenance\n";
  for (const auto& d : result.denominators)
    os << d.cls << ',' << d.seed << ',' << format_number(d.best_cut) << ',' << d.provenance << '\n';
  return os.str();
}

nlohmann::json bench_to_json(const BenchResult& result) {
  nlohmann::json rows = nlohmann::json::array(), summary = nlohmann::json::array(),
                 denoms = nlohmann::json::array();
  for (const auto& r : result.rows)
    rows.push_back({{"class", r.cls},
                    {"method", r.method},
                    {"seed", r.seed},
                    {"n", r.n},
                    {"q", r.q},
                    {"r", r.r},
                    {"value", r.value},
                    {"Q_modularity", r.modularity},
                    {"tree_height", r.tree_height},
                    {"runtime_ms", r.runtime_ms}});
  for (const auto& b : result.summary)
    summary.push_back({{"class", b.cls},
                       {"method", b.method},
                       {"count", b.count},
                       {"mean", b.mean},
                       {"median", b.median},
                       {"q1", b.q1},
                       {"q3", b.q3},
                       {"lower_fence", b.lower_fence},
                       {"upper_fence", b.upper_fence}});
  for (const auto& d : result.denominators)
    denoms.push_back({{"class", d.cls}, {"seed", d.seed}, {"best_cut", d.best_cut}, {"provenance", d.provenance}});
  return {{"rows", rows}, {"summary", summary}, {"denominators", denoms}};
}

}  // namespace dqaoa
