#include "dqaoa/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dqaoa/bench.hpp"
#include "dqaoa/distributed.hpp"
#include "dqaoa/error.hpp"
#include "dqaoa/format.hpp"
#include "dqaoa/generators.hpp"
#include "dqaoa/problem_io.hpp"
#include "dqaoa/reduction.hpp"

namespace dqaoa {

namespace {

using nlohmann::json;

// Exhaustive bounds for r are only computed up to this many spins.
constexpr int kRatioSpinLimit = 22;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json model_to_json(const IsingModel& m) {
  json couplings = json::array();
  for (const auto& [ij, w] : m.couplings()) couplings.push_back({ij.first, ij.second, w});
  return {{"n", m.size()},
          {"offset", m.offset()},
          {"linear", m.linear_terms()},
          {"couplings", couplings},
          {"labels", m.labels()}};
}

std::string csv_field(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string text_field(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); })) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : " ") + text_field(e);
    return s;
  }
  if (v.is_number_float()) return format_number(v.get<double>());
  return v.dump();
}

// A flat object as "key value" lines or "key,value" rows.
std::string render_object(const json& obj, const std::string& format) {
  if (format == "json") return obj.dump(2) + "\n";
  std::ostringstream os;
  if (format == "csv") os << "key,value\n";
  for (const auto& [k, v] : obj.items()) {
    if (format == "csv")
      os << k << ',' << csv_field(v) << '\n';
    else
      os << k << ' ' << text_field(v) << '\n';
  }
  return os.str();
}

std::string render_graph(const IsingModel& m, const std::string& format) {
  if (format == "json") return model_to_json(m).dump(2) + "\n";
  if (format == "text") return format_graph(m);
  std::ostringstream os;
  os << "kind,i,j,w\n";
  for (const auto& [ij, w] : m.couplings()) os << "q," << ij.first << ',' << ij.second << ',' << format_number(w) << '\n';
  for (int k = 0; k < m.size(); ++k)
    if (m.linear(k) != 0.0) os << "l," << k << ",," << format_number(m.linear(k)) << '\n';
  if (m.offset() != 0.0) os << "c,,," << format_number(m.offset()) << '\n';
  return os.str();
}

std::string bits(const BoolAssignment& x) {
  std::string s;
  for (auto b : x) s += b ? '1' : '0';
  return s;
}

std::vector<int> spins_json(const SpinAssignment& z) { return {z.begin(), z.end()}; }

IsingModel negated(const IsingModel& m) {
  IsingModel n(m.size());
  for (int k = 0; k < m.size(); ++k) n.add_linear(k, -m.linear(k));
  for (const auto& [ij, w] : m.couplings()) n.add_coupling(ij.first, ij.second, -w);
  n.set_offset(-m.offset());
  return n;
}

// (E_max - E) / (E_max - E_min) with exact bounds, or null when too large.
json ratio(const IsingModel& m, double achieved) {
  if (m.size() == 0 || m.size() > kRatioSpinLimit) return nullptr;
  const double lo = brute_force_min(m).value;
  const double hi = -brute_force_min(negated(m)).value;
  if (!(hi > lo)) return 1.0;
  return approximation_ratio(hi, lo, achieved);
}

struct SolveOptions {
  int q = 10;
  std::string partition = "louvain";
  std::string baseline = "none";
  int p = 1;
  int iters = 20;
  int restarts = 5;
  int shots = 1024;
  std::string decode = "best";
  std::optional<double> mu, lambda;
  std::optional<int> slack_bits;
  bool resolve_truncated = false;
};

DistributedConfig make_config(const SolveOptions& o, std::uint64_t seed) {
  DistributedConfig c;
  c.q_cap = o.q;
  c.partition = o.partition == "random" ? PartitionMethod::Random
                : o.partition == "greedy" ? PartitionMethod::Greedy
                                          : PartitionMethod::Louvain;
  c.qaoa.p = o.p;
  c.qaoa.iterations = o.iters;
  c.qaoa.restarts = o.restarts;
  c.qaoa.shots = o.shots;
  c.qaoa.decode = o.decode == "argmax" ? Decode::ArgmaxProb : Decode::BestOfShots;
  c.qaoa.seed = seed;
  c.seed = seed;
  c.resolve_truncated = o.resolve_truncated;
  c.validate();
  return c;
}

ReductionConfig reduction_config(const SolveOptions& o) {
  ReductionConfig rc;
  rc.mu = o.mu;
  rc.lambda = o.lambda;
  rc.slack_bits = o.slack_bits;
  rc.q_cap = o.q;
  rc.validate();
  return rc;
}

// Distributed solve of an Ising model with leaf chains peeled first.
json solve_model(const IsingModel& model, const DistributedConfig& config, const std::string& baseline,
                 SpinAssignment& z_out) {
  const ChainElimination chains = eliminate_chains(model);
  json out;
  SpinAssignment reduced;
  if (chains.model.size() > 0) {
    const DistributedReport rep = solve_distributed(chains.model, config);
    reduced = rep.z;
    const json r = report_to_json(rep);
    out["tree"] = {{"tree_height", rep.tree_height},
                   {"communities", r["communities"]},
                   {"modularity", rep.modularity},
                   {"local_updates", rep.local_updates},
                   {"truncations", rep.truncations}};
    out["per_level"] = r["per_level"];
  } else {
    out["tree"] = {{"tree_height", 0}};
    out["per_level"] = json::array();
  }
  z_out = expand_chains(chains, reduced);
  const double value = energy(model, z_out);
  out["global_value"] = value;
  out["r"] = ratio(model, value);
  out["z"] = spins_json(z_out);
  out["spins"] = model.size();
  out["spins_after_chains"] = chains.model.size();
  if (baseline == "naive") {
    if (chains.model.size() > 0) {
      const NaiveReport nr = solve_naive(chains.model, config, SignSolver::Qaoa);
      out["baseline_value"] = energy(model, expand_chains(chains, nr.result.z));
    } else {
      out["baseline_value"] = value;
    }
  } else {
    out["baseline_value"] = nullptr;
  }
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distributed QAOA solver for pseudo-Boolean problems", "dqaoa"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  std::string format = "text";
  std::string out_path;
  app.add_option("--seed", seed, "Base seed for all randomness");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", out_path, "Write output to a file instead of stdout");

  SolveOptions so;
  auto add_reduction_flags = [&](CLI::App* sub) {
    sub->add_option("--mu", so.mu, "Constraint penalty weight");
    sub->add_option("--lambda", so.lambda, "Quadratization penalty multiplier");
    sub->add_option("--slack-bits", so.slack_bits, "Bits per slack register")->check(CLI::Range(1, 30));
  };

  std::string file;
  auto* reduce = app.add_subcommand("reduce", "Reduce a problem file to an Ising model");
  reduce->add_option("file", file, "Problem file")->required();
  add_reduction_flags(reduce);

  auto* solve = app.add_subcommand("solve", "Solve a problem file or graph file");
  solve->add_option("file", file, "Problem or graph file")->required();
  solve->add_option("--q", so.q, "Qubit cap per subproblem")->check(CLI::Range(2, kSimulatorQubitCap));
  solve->add_option("--partition", so.partition)->check(CLI::IsMember({"louvain", "random", "greedy"}));
  solve->add_option("--baseline", so.baseline)->check(CLI::IsMember({"none", "naive"}));
  solve->add_option("--p", so.p, "QAOA layers")->check(CLI::PositiveNumber);
  solve->add_option("--iters", so.iters, "Optimiser evaluations per restart")->check(CLI::PositiveNumber);
  solve->add_option("--restarts", so.restarts)->check(CLI::NonNegativeNumber);
  solve->add_option("--shots", so.shots)->check(CLI::PositiveNumber);
  solve->add_option("--decode", so.decode)->check(CLI::IsMember({"best", "argmax"}));
  solve->add_flag("--resolve-truncated", so.resolve_truncated,
                  "Re-solve in-sets even when the candidate equals the old local solution");
  add_reduction_flags(solve);

  auto* oracle = app.add_subcommand("oracle", "Exhaustive ground state of a graph or problem file");
  oracle->add_option("file", file, "Graph or problem file")->required();
  add_reduction_flags(oracle);

  auto* gen = app.add_subcommand("gen", "Generate a random Max-Cut graph");
  gen->require_subcommand(1);
  int gn = 0, gd = 3;
  double gavg = 5.0;
  bool weighted = false;
  WeightRange wr;
  auto* regular = gen->add_subcommand("regular", "Random d-regular graph");
  regular->add_option("--n", gn)->required();
  regular->add_option("--d", gd)->required();
  auto* er = gen->add_subcommand("er", "Erdos-Renyi graph");
  er->add_option("--n", gn)->required();
  er->add_option("--avg", gavg, "Average degree")->required();
  for (auto* g : {regular, er}) {
    g->add_flag("--weighted", weighted, "Integer weights from the weight range");
    g->add_option("--wlo", wr.lo, "Lowest weight");
    g->add_option("--whi", wr.hi, "Highest weight");
  }

  auto* bench = app.add_subcommand("bench", "Run a benchmark described by a JSON spec");
  bench->add_option("file", file, "Bench spec file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  std::string result;
  try {
    if (reduce->parsed()) {
      const ConstrainedProblem problem = parse_problem(read_file(file));
      const ReductionResult rr = reduce_full(problem, reduction_config(so));
      if (format == "json")
        result = json{{"model", model_to_json(rr.model)}, {"trace", trace_to_json(rr.trace)}}.dump(2) + "\n";
      else
        result = render_graph(rr.model, format);
    } else if (solve->parsed()) {
      const auto t0 = std::chrono::steady_clock::now();
      const std::string text = read_file(file);
      const DistributedConfig config = make_config(so, seed);
      json rep;
      SpinAssignment z;
      if (looks_like_problem(text)) {
        const ConstrainedProblem problem = parse_problem(text);
        const ReductionResult rr = reduce_full(problem, reduction_config(so));
        json ising = solve_model(rr.model, config, so.baseline, z);
        const Reconstruction rec = reconstruct(rr.trace, z, false);
        rep["input"] = "problem";
        rep["objective"] = rec.objective;
        rep["x"] = bits(rec.x);
        rep["variables"] = problem.variable_names;
        rep["feasible"] = rec.feasible;
        rep["aux_violations"] = rec.aux_violations;
        for (const auto& [k, v] : ising.items()) rep[k] = v;
      } else {
        const IsingModel model = parse_graph(text);
        rep = solve_model(model, config, so.baseline, z);
        rep["input"] = "graph";
      }
      rep["seed"] = seed;
      rep["runtime_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      result = render_object(rep, format);
    } else if (oracle->parsed()) {
      const std::string text = read_file(file);
      json rep;
      if (looks_like_problem(text)) {
        const ReductionResult rr = reduce_full(parse_problem(text), reduction_config(so));
        const GroundState g = brute_force_min(rr.model);
        const Reconstruction rec = reconstruct(rr.trace, g.z, false);
        rep["value"] = g.value;
        rep["z"] = spins_json(g.z);
        rep["objective"] = rec.objective;
        rep["x"] = bits(rec.x);
        rep["feasible"] = rec.feasible;
      } else {
        const IsingModel model = parse_graph(text);
        if (model.size() > kBruteForceCap) throw InputError("oracle is limited to 26 spins");
        const GroundState g = brute_force_min(model);
        rep["value"] = g.value;
        rep["z"] = spins_json(g.z);
      }
      result = render_object(rep, format);
    } else if (gen->parsed()) {
      const IsingModel g = regular->parsed() ? gen_regular(gn, gd, weighted, wr, seed)
                                             : gen_er(gn, gavg, weighted, wr, seed);
      result = render_graph(g, format);
    } else if (bench->parsed()) {
      json spec_json;
      try {
        spec_json = json::parse(read_file(file));
      } catch (const json::parse_error& e) {
        throw InputError(std::string("bench spec: ") + e.what());
      }
      BenchSpec spec = bench_spec_from_json(spec_json);
      if (spec.seeds.empty()) spec.seeds.push_back(seed);
      const BenchResult br = run_benchmark(spec);
      result = format == "json" ? bench_to_json(br).dump(2) + "\n" : bench_to_csv(br);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ReconstructionError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (out_path.empty()) {
    out << result;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f || !(f << result)) {
      err << "error: cannot write '" << out_path << "'\n";
      return 2;
    }
  }
  return 0;
}

}  // namespace dqaoa
