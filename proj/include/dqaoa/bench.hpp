#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "dqaoa/distributed.hpp"
#include "dqaoa/generators.hpp"

namespace dqaoa {

enum class GraphClass { UR, WR, UE, WE };

struct BenchSpec {
  std::vector<GraphClass> classes{GraphClass::UR, GraphClass::WR, GraphClass::UE, GraphClass::WE};
  int n = 40;
  int degree = 9;             ///< UR / WR
  double avg_degree = 5.0;    ///< UE / WE
  WeightRange weight_range;
  int q_cap = 8;
  /// ours-{louvain,random,greedy}, naive-{louvain,random,greedy}
  std::vector<std::string> methods{"ours-louvain", "naive-louvain"};
  std::vector<std::uint64_t> seeds;
  QaoaConfig qaoa;
  /// "auto": exhaustive optimum when n <= 26, else best-found. "best-found": always best-found.
  std::string denominator = "auto";

  void validate() const;
};

/// Reads the JSON bench description; missing keys keep their defaults. "seeds" is a list or a count.
BenchSpec bench_spec_from_json(const nlohmann::json& j);

struct BenchRow {
  std::string cls;
  std::string method;
  std::uint64_t seed = 0;
  int n = 0;
  int q = 0;
  double r = 0.0;
  double value = 0.0;  ///< cut value
  double modularity = 0.0;
  int tree_height = 0;
  double runtime_ms = 0.0;
};

struct BoxStats {
  std::string cls;
  std::string method;
  int count = 0;
  double mean = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double lower_fence = 0.0;
  double upper_fence = 0.0;
};

struct Denominator {
  std::string cls;
  std::uint64_t seed = 0;
  double best_cut = 0.0;
  std::string provenance;  ///< "exhaustive" or "best-found:<method>"
};

struct BenchResult {
  std::vector<BenchRow> rows;          ///< (class, method, seed) order
  std::vector<BoxStats> summary;       ///< (class, method) order
  std::vector<Denominator> denominators;
};

const char* class_name(GraphClass c);
GraphClass parse_class(const std::string& name);

IsingModel generate_class(const BenchSpec& spec, GraphClass c, std::uint64_t seed);

/// Max-Cut with leaf chains peeled first; the returned assignment covers the whole graph.
struct MethodOutcome {
  SpinAssignment z;
  double modularity = 0.0;
  int tree_height = 0;
};
MethodOutcome run_method(const IsingModel& graph, const std::string& method, const DistributedConfig& config);

BenchResult run_benchmark(const BenchSpec& spec);

/// Linear-interpolation quantiles and 1.5 IQR fences.
BoxStats box_stats(std::vector<double> values);

extern const char* const kBenchCsvHeader;
std::string bench_to_csv(const BenchResult& result);
nlohmann::json bench_to_json(const BenchResult& result);

}  // namespace dqaoa
