#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mipdecomp/dataset.hpp"
#include "mipdecomp/decomposition.hpp"
#include "mipdecomp/features.hpp"
#include "mipdecomp/ranking.hpp"
#include "mipdecomp/report.hpp"
#include "mipdecomp/sampler.hpp"
#include "mipdecomp/stats_tests.hpp"

namespace mipdecomp {

using InstanceMap = std::map<std::string, MipInstance>;

struct GenerationOptions {
  std::vector<double> proportions = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  int count_per_proportion = 1;  // greedy draws per proportion
  NsgaConfig nsga;               // generations = 0 disables the evolutionary pass
  std::uint64_t seed = 1;
  bool include_none_relaxed = true;
};

/// Greedy draws over the proportion grid plus an NSGA-II front, every result
/// pushed through the redundancy rules, deduplicated by canonical key. The
/// no-relaxation decomposition is always first when enabled.
std::vector<Decomposition> generate_decompositions(const MipInstance& instance,
                                                   const std::string& instance_id,
                                                   const GenerationOptions& options);

struct EvaluateSummary {
  int evaluated = 0;
  int skipped = 0;  // already carried an eval block
  int failed = 0;   // recorded in place, never aborts the batch
};

/// Fills the eval block of every record that lacks one. The reference
/// incumbent is computed once per instance. `workers` > 1 evaluates
/// concurrently; results land by record index so output order is stable.
EvaluateSummary evaluate_records(const InstanceMap& instances, std::vector<DatasetRecord>& records,
                                 const EvalBudget& budget, int workers = 1);

struct BenchmarkOptions {
  int top_k = 8;
  std::string control = "voting";
  int sided = 2;
  std::uint64_t seed = 1;
};

struct BenchmarkResult {
  ComparisonTable table;  // instance x method selected scores
  FriedmanResult friedman;
  bool has_friedman = false;
  std::vector<NamedPairwise> pairwise;
  LabeledDataset dataset;
  std::vector<std::string> warnings;
  std::vector<ScatterSeries> prediction_scatter;
};

inline const std::vector<std::string>& benchmark_methods() {
  static const std::vector<std::string> kMethods = {"rba",   "goodness", "gcg_os", "max_white",
                                                    "ridge", "lasso",    "knn",    "voting"};
  return kMethods;
}

/// Full protocol over an evaluated dataset: heuristic rankers (RBA,
/// Goodness, GCG-OS, Max-White) and leave-one-instance-out models (ridge,
/// lasso, KNN, voting), each selecting top_k per instance; Friedman +
/// aligned-rank pairwise tests against the control method.
BenchmarkResult run_benchmark(const InstanceMap& instances,
                              const std::vector<DatasetRecord>& records,
                              const BenchmarkOptions& options);

/// Labeled rows plus the per-instance decompositions behind them, for
/// callers that need both (heuristic selection, feature export).
struct LabeledBundle {
  LabeledDataset dataset;
  // instance id -> (key -> decomposition), keys match LabeledRow.key.
  std::map<std::string, std::map<std::string, Decomposition>> decomps;
};

LabeledBundle build_labeled_bundle(const InstanceMap& instances,
                                   const std::vector<DatasetRecord>& records);

/// Selected renormalized score of one ranker's top_k on one instance's rows:
/// `order` lists row indices best-first.
double selected_score(const std::vector<LabeledRow>& rows, const std::vector<int>& order,
                      int top_k);

}  // namespace mipdecomp
