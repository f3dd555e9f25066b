#include "mipdecomp/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <stdexcept>
#include <thread>

#include "mipdecomp/heuristics.hpp"

namespace mipdecomp {

std::vector<Decomposition> generate_decompositions(const MipInstance& instance,
                                                   const std::string& instance_id,
                                                   const GenerationOptions& options) {
  std::vector<Decomposition> out;
  std::set<std::string> seen;
  auto push = [&](Decomposition d) {
    d.instance_id = instance_id;
    std::string key = canonical_key(d);
    if (seen.insert(key).second) out.push_back(std::move(d));
  };

  if (options.include_none_relaxed)
    push(partition(instance, {}, DecompositionSource::NoneRelaxed));

  Rng rng(options.seed);
  for (double q : options.proportions) {
    // proportions too small to select a constraint on this instance are
    // skipped rather than treated as an error
    if (q * instance.num_constraints() < 1.0) continue;
    for (int c = 0; c < options.count_per_proportion; ++c) {
      Decomposition d = greedy_sample_one(instance, q, rng);
      push(remove_redundant_constraints(instance, d));
    }
  }

  if (options.nsga.generations > 0 && options.nsga.population_size >= 4) {
    NsgaConfig cfg = options.nsga;
    cfg.seed = options.seed ^ 0x9e3779b97f4a7c15ull;
    for (Decomposition& d : evolve(instance, cfg)) push(std::move(d));
  }
  return out;
}

EvaluateSummary evaluate_records(const InstanceMap& instances, std::vector<DatasetRecord>& records,
                                 const EvalBudget& budget, int workers) {
  EvaluateSummary summary;
  // Reference incumbents, one budgeted solve per instance.
  std::map<std::string, std::pair<double, bool>> reference;
  std::vector<size_t> todo;
  for (size_t i = 0; i < records.size(); ++i) {
    if (records[i].eval) {
      ++summary.skipped;
      continue;
    }
    todo.push_back(i);
    const std::string& id = records[i].instance;
    if (!reference.count(id) && instances.count(id)) {
      bool found = false;
      double primal = reference_primal(instances.at(id), budget, found);
      reference[id] = {primal, found};
    }
  }

  auto eval_one = [&](size_t i) {
    DatasetRecord& rec = records[i];
    auto it = instances.find(rec.instance);
    if (it == instances.end()) {
      EvalRecord e;
      e.ok = false;
      e.failure = "unknown instance: " + rec.instance;
      rec.eval = std::move(e);
      return false;
    }
    try {
      Decomposition d = partition(it->second, rec.relaxed,
                                  decomposition_source_from_string(rec.source));
      auto [primal, found] = reference.at(rec.instance);
      EvaluationResult res = evaluate(it->second, d, budget, primal, found);
      rec.eval = EvalRecord::from_result(res);
      return res.ok;
    } catch (const std::exception& e) {
      EvalRecord er;
      er.ok = false;
      er.failure = e.what();
      rec.eval = std::move(er);
      return false;
    }
  };

  workers = std::max(1, workers);
  std::atomic<size_t> next{0};
  std::atomic<int> evaluated{0}, failed{0};
  auto worker = [&] {
    for (;;) {
      size_t t = next.fetch_add(1);
      if (t >= todo.size()) break;
      if (eval_one(todo[t]))
        ++evaluated;
      else
        ++failed;
    }
  };
  if (workers == 1 || todo.size() < 2) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min<int>(workers, static_cast<int>(todo.size())); ++w)
      pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  summary.evaluated = evaluated;
  summary.failed = failed;
  return summary;
}

LabeledBundle build_labeled_bundle(const InstanceMap& instances,
                                   const std::vector<DatasetRecord>& records) {
  LabeledBundle bundle;
  std::vector<EvaluatedDecomposition> evaluated;
  for (const DatasetRecord& rec : records) {
    if (!rec.eval || !rec.eval->ok) continue;
    auto it = instances.find(rec.instance);
    if (it == instances.end()) continue;
    Decomposition d = partition(it->second, rec.relaxed,
                                decomposition_source_from_string(rec.source));
    DecompositionStats stats = compute_stats(it->second, d);
    EvaluatedDecomposition ed;
    ed.instance_id = rec.instance;
    ed.key = canonical_key(d);
    ed.features = extract_features(it->second, d, stats).to_vector();
    ed.gap_pct = rec.eval->gap_pct;
    ed.time_seconds = rec.eval->time_s;
    bundle.decomps[rec.instance].emplace(ed.key, std::move(d));
    evaluated.push_back(std::move(ed));
  }
  bundle.dataset = label_dataset(evaluated);
  return bundle;
}

double selected_score(const std::vector<LabeledRow>& rows, const std::vector<int>& order,
                      int top_k) {
  if (rows.empty() || order.empty()) throw std::invalid_argument("selected_score on empty input");
  double best = rows[static_cast<size_t>(order[0])].score;
  for (int i = 1; i < std::min<int>(top_k, static_cast<int>(order.size())); ++i)
    best = std::min(best, rows[static_cast<size_t>(order[static_cast<size_t>(i)])].score);
  double lo = rows[0].score, hi = rows[0].score;
  for (const auto& r : rows) {
    lo = std::min(lo, r.score);
    hi = std::max(hi, r.score);
  }
  return hi > lo ? (best - lo) / (hi - lo) : 0.0;
}

BenchmarkResult run_benchmark(const InstanceMap& instances,
                              const std::vector<DatasetRecord>& records,
                              const BenchmarkOptions& options) {
  BenchmarkResult result;
  LabeledBundle bundle = build_labeled_bundle(instances, records);
  result.dataset = bundle.dataset;
  for (const std::string& id : bundle.dataset.degenerate_instances)
    result.warnings.push_back("instance " + id + " has a single decomposition; excluded");

  // Rows per instance, degenerate instances dropped.
  std::map<std::string, std::vector<LabeledRow>> rows_by_instance;
  for (const LabeledRow& r : bundle.dataset.rows) rows_by_instance[r.instance_id].push_back(r);
  for (const std::string& id : bundle.dataset.degenerate_instances) rows_by_instance.erase(id);
  if (rows_by_instance.empty()) throw std::invalid_argument("no usable instances in the dataset");

  LabeledDataset usable;
  for (const auto& [id, rows] : rows_by_instance)
    usable.rows.insert(usable.rows.end(), rows.begin(), rows.end());

  const std::vector<std::string>& methods = benchmark_methods();
  result.table.methods = methods;
  for (const auto& [id, rows] : rows_by_instance) result.table.instances.push_back(id);
  result.table.scores.assign(result.table.instances.size(),
                             std::vector<double>(methods.size(), 0.0));

  // Heuristic columns.
  const std::vector<std::string> heuristic_names = {"rba", "goodness", "gcg_os", "max_white"};
  size_t row_idx = 0;
  for (const auto& [id, rows] : rows_by_instance) {
    const MipInstance& inst = instances.at(id);
    std::vector<Decomposition> decomps;
    decomps.reserve(rows.size());
    for (const LabeledRow& r : rows) decomps.push_back(bundle.decomps.at(id).at(r.key));
    std::vector<HeuristicScores> hs = score_all(inst, decomps);
    for (size_t h = 0; h < heuristic_names.size(); ++h) {
      std::vector<int> order = heuristic_ranking(hs, heuristic_names[h]);
      result.table.scores[row_idx][h] = selected_score(rows, order, options.top_k);
    }
    ++row_idx;
  }

  // Model columns via leave-one-instance-out.
  bool models_ok = rows_by_instance.size() >= 2;
  if (!models_ok)
    result.warnings.push_back("fewer than 2 instances; model columns left at 0");
  const std::vector<std::pair<std::string, ModelKind>> model_cols = {
      {"ridge", ModelKind::Ridge},
      {"lasso", ModelKind::Lasso},
      {"knn", ModelKind::Knn},
      {"voting", ModelKind::Voting}};
  if (models_ok) {
    for (const auto& [name, kind] : model_cols) {
      LoioResult loio = leave_one_instance_out(usable, kind, options.top_k);
      size_t col = 0;
      while (methods[col] != name) ++col;
      for (const LoioRow& lr : loio.per_instance) {
        auto it = std::find(result.table.instances.begin(), result.table.instances.end(),
                            lr.instance_id);
        result.table.scores[static_cast<size_t>(it - result.table.instances.begin())][col] =
            lr.selected_score;
      }
      if (name == "voting") {
        // Predicted-vs-actual scatter from the control model's folds.
        for (const auto& [held_out, test_rows] : rows_by_instance) {
          Matrix x;
          std::vector<double> y;
          for (const LabeledRow& r : usable.rows) {
            if (r.instance_id == held_out) continue;
            x.push_back(r.features);
            y.push_back(r.score);
          }
          RankingModel model = fit_model(kind, x, y);
          ScatterSeries s;
          s.label = held_out;
          for (const LabeledRow& r : test_rows)
            s.points.emplace_back(model.predict(r.features), r.score);
          result.prediction_scatter.push_back(std::move(s));
        }
      }
    }
  }

  if (result.table.n() >= 2 && result.table.k() >= 2) {
    result.friedman = friedman_statistic(result.table);
    result.has_friedman = true;
    int control = -1;
    for (size_t j = 0; j < methods.size(); ++j)
      if (methods[j] == options.control) control = static_cast<int>(j);
    if (control < 0) throw std::invalid_argument("unknown control method: " + options.control);
    for (size_t j = 0; j < methods.size(); ++j) {
      if (static_cast<int>(j) == control) continue;
      NamedPairwise pw;
      pw.control = options.control;
      pw.comparison = methods[j];
      pw.result = aligned_rank_pairwise(result.table, control, static_cast<int>(j), options.sided);
      result.pairwise.push_back(std::move(pw));
    }
  } else {
    result.warnings.push_back("fewer than 2 instances; statistical tests skipped");
  }
  return result;
}

}  // namespace mipdecomp
