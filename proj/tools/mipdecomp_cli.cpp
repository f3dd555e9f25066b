// mipdecomp: decomposition generation, Lagrangian evaluation, heuristic and
// learned ranking, and statistical comparison, over MPS instances and a
// JSONL decomposition dataset.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mipdecomp/dataset.hpp"
#include "mipdecomp/heuristics.hpp"
#include "mipdecomp/mps.hpp"
#include "mipdecomp/pca.hpp"
#include "mipdecomp/pipeline.hpp"
#include "mipdecomp/report.hpp"
#include "mipdecomp/synthetic.hpp"

using namespace mipdecomp;

namespace {

constexpr int kOk = 0, kConfigError = 1, kPartialFailure = 2;

std::string instance_id_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

// Parses every instance it can; failures are reported and skipped.
InstanceMap load_instances(const std::vector<std::string>& paths, int& failures) {
  InstanceMap map;
  for (const std::string& p : paths) {
    try {
      MipInstance inst = parse_mps_file(p);
      inst.validate();
      map[instance_id_of(p)] = std::move(inst);
    } catch (const std::exception& e) {
      std::cerr << "error: " << p << ": " << e.what() << "\n";
      ++failures;
    }
  }
  return map;
}

int env_workers() {
  const char* v = std::getenv("MIPDECOMP_WORKERS");
  if (!v) return 1;
  int n = std::atoi(v);
  return n >= 1 ? n : 1;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

ComparisonTable read_scores_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  ComparisonTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  std::stringstream header(line);
  std::string cell;
  std::getline(header, cell, ',');  // "instance" corner cell
  while (std::getline(header, cell, ',')) table.methods.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::getline(row, cell, ',');
    table.instances.push_back(cell);
    std::vector<double> scores;
    while (std::getline(row, cell, ',')) scores.push_back(std::stod(cell));
    table.scores.push_back(std::move(scores));
  }
  table.validate();
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MIP decomposition workbench"};
  app.require_subcommand(1);

  std::vector<std::string> instance_paths;
  std::string dataset_path, out_path, model_name = "voting", model_file;
  std::string control = "voting";
  std::vector<std::string> versus;
  std::vector<double> proportions;
  int count = 1, pop = 32, gens = 300, top_k = 8, sided = 2, components = 2;
  std::uint64_t seed = 1;
  double budget = 10.0, gap = 0.01;

  auto add_instances = [&](CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("--instance,-i", instance_paths, "MPS instance file(s)");
    if (required) opt->required();
  };

  auto* cmd_generate = app.add_subcommand("generate", "Sample decompositions into a JSONL dataset");
  add_instances(cmd_generate);
  cmd_generate->add_option("--out,-o", out_path, "output dataset (JSONL)")->required();
  cmd_generate->add_option("--proportion", proportions, "greedy target proportions (default 0.1..0.9)");
  cmd_generate->add_option("--count", count, "greedy draws per proportion");
  cmd_generate->add_option("--pop", pop, "NSGA-II population size");
  cmd_generate->add_option("--gens", gens, "NSGA-II generations (0 disables)");
  cmd_generate->add_option("--seed", seed, "RNG seed");

  auto* cmd_evaluate = app.add_subcommand("evaluate", "Lagrangian-evaluate unevaluated records");
  add_instances(cmd_evaluate);
  cmd_evaluate->add_option("--dataset,-d", dataset_path, "JSONL dataset")->required();
  cmd_evaluate->add_option("--budget", budget, "CPU seconds per decomposition");
  cmd_evaluate->add_option("--gap", gap, "relative gap per subproblem");

  auto* cmd_heur = app.add_subcommand("heuristics", "Score every record with the four heuristics");
  add_instances(cmd_heur);
  cmd_heur->add_option("--dataset,-d", dataset_path)->required();
  cmd_heur->add_option("--out,-o", out_path, "CSV output (default stdout)");

  auto* cmd_features = app.add_subcommand("features", "Export per-decomposition features and labels");
  add_instances(cmd_features);
  cmd_features->add_option("--dataset,-d", dataset_path)->required();
  cmd_features->add_option("--out,-o", out_path, "CSV output (default stdout)");

  auto* cmd_train = app.add_subcommand("train", "Fit a ranking model on an evaluated dataset");
  add_instances(cmd_train);
  cmd_train->add_option("--dataset,-d", dataset_path)->required();
  cmd_train->add_option("--model,-m", model_name, "ridge|lasso|knn|voting|rc_ridge|rc_lasso");
  cmd_train->add_option("--out,-o", out_path, "model JSON output")->required();

  auto* cmd_rank = app.add_subcommand("rank", "Rank one instance's decompositions with a model");
  add_instances(cmd_rank);
  cmd_rank->add_option("--dataset,-d", dataset_path)->required();
  cmd_rank->add_option("--model-file", model_file, "trained model JSON")->required();
  cmd_rank->add_option("--top", top_k, "selection size");

  auto* cmd_bench = app.add_subcommand("benchmark", "Full ranking-method comparison protocol");
  add_instances(cmd_bench);
  cmd_bench->add_option("--dataset,-d", dataset_path)->required();
  cmd_bench->add_option("--out,-o", out_path, "report directory")->required();
  cmd_bench->add_option("--control", control, "control method for pairwise tests");
  cmd_bench->add_option("--sided", sided, "1 or 2")->check(CLI::IsMember({1, 2}));
  cmd_bench->add_option("--top", top_k, "selection size");

  auto* cmd_stats = app.add_subcommand("stats", "Friedman and pairwise tests on a score grid");
  cmd_stats->add_option("--scores", dataset_path, "selected-scores CSV")->required();
  cmd_stats->add_option("--control", control)->required();
  cmd_stats->add_option("--versus", versus, "comparison methods (default: all others)");
  cmd_stats->add_option("--sided", sided)->check(CLI::IsMember({1, 2}));

  auto* cmd_pca = app.add_subcommand("pca", "PCA of instance features");
  add_instances(cmd_pca);
  cmd_pca->add_option("--components", components, "components to print");
  cmd_pca->add_option("--out,-o", out_path, "report directory (optional)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_generate->parsed()) {
      int parse_failures = 0;
      InstanceMap instances = load_instances(instance_paths, parse_failures);
      if (instances.empty()) return kConfigError;
      GenerationOptions opt;
      if (!proportions.empty()) opt.proportions = proportions;
      opt.count_per_proportion = count;
      opt.nsga.population_size = pop;
      opt.nsga.generations = gens;
      opt.seed = seed;
      std::vector<DatasetRecord> records;
      for (const auto& [id, inst] : instances) {
        std::map<std::string, int> per_source;
        for (const Decomposition& d : generate_decompositions(inst, id, opt)) {
          records.push_back(make_record(d));
          ++per_source[to_string(d.source)];
        }
        std::cerr << id << ":";
        for (const auto& [src, cnt] : per_source) std::cerr << " " << src << "=" << cnt;
        std::cerr << "\n";
      }
      write_jsonl(out_path, records);
      std::cout << records.size() << " records -> " << out_path << "\n";
      return parse_failures ? kPartialFailure : kOk;
    }

    if (cmd_evaluate->parsed()) {
      int parse_failures = 0;
      InstanceMap instances = load_instances(instance_paths, parse_failures);
      if (instances.empty()) return kConfigError;
      std::vector<DatasetRecord> records = read_jsonl(dataset_path);
      EvalBudget b;
      b.total_cpu_seconds = budget;
      b.subproblem_gap = gap;
      EvaluateSummary s = evaluate_records(instances, records, b, env_workers());
      if (s.evaluated + s.failed > 0) write_jsonl(dataset_path, records);
      std::cout << "evaluated=" << s.evaluated << " skipped=" << s.skipped
                << " failed=" << s.failed << "\n";
      return (s.failed || parse_failures) ? kPartialFailure : kOk;
    }

    if (cmd_heur->parsed() || cmd_features->parsed()) {
      int parse_failures = 0;
      InstanceMap instances = load_instances(instance_paths, parse_failures);
      if (instances.empty()) return kConfigError;
      std::vector<DatasetRecord> records = read_jsonl(dataset_path);
      std::ostringstream csv;
      if (cmd_heur->parsed()) {
        csv << "instance,key,rba,goodness,gcg_os,max_white\n";
        for (const DatasetRecord& rec : records) {
          auto it = instances.find(rec.instance);
          if (it == instances.end()) continue;
          Decomposition d = partition(it->second, rec.relaxed,
                                      decomposition_source_from_string(rec.source));
          std::vector<HeuristicScores> hs = score_all(it->second, {d});
          csv << rec.instance << ',' << csv_escape(hs[0].key) << ',' << fmt(hs[0].rba) << ','
              << fmt(hs[0].goodness) << ',' << fmt(hs[0].gcg_os) << ',' << fmt(hs[0].max_white)
              << '\n';
        }
      } else {
        LabeledBundle bundle = build_labeled_bundle(instances, records);
        csv << "instance,key";
        for (const std::string& f : DecompositionFeatureVector::field_names()) csv << ',' << f;
        csv << ",gap_pct,time_s,normalized_gap,normalized_time,score\n";
        for (const LabeledRow& r : bundle.dataset.rows) {
          csv << r.instance_id << ',' << csv_escape(r.key);
          for (double v : r.features) csv << ',' << fmt(v);
          csv << ',' << fmt(r.raw_gap) << ',' << fmt(r.raw_time) << ',' << fmt(r.normalized_gap)
              << ',' << fmt(r.normalized_time) << ',' << fmt(r.score) << '\n';
        }
      }
      if (out_path.empty())
        std::cout << csv.str();
      else
        write_text_file(out_path, csv.str());
      return parse_failures ? kPartialFailure : kOk;
    }

    if (cmd_train->parsed()) {
      int parse_failures = 0;
      InstanceMap instances = load_instances(instance_paths, parse_failures);
      if (instances.empty()) return kConfigError;
      LabeledBundle bundle = build_labeled_bundle(instances, read_jsonl(dataset_path));
      if (bundle.dataset.rows.empty()) {
        std::cerr << "error: no evaluated rows to train on\n";
        return kConfigError;
      }
      Matrix x;
      std::vector<double> y;
      for (const LabeledRow& r : bundle.dataset.rows) {
        x.push_back(r.features);
        y.push_back(r.score);
      }
      RankingModel model = fit_model(model_kind_from_string(model_name), x, y);
      write_text_file(out_path, model.to_json());
      std::cout << to_string(model.kind) << " model on " << x.size() << " rows -> " << out_path
                << "\n";
      return parse_failures ? kPartialFailure : kOk;
    }

    if (cmd_rank->parsed()) {
      int parse_failures = 0;
      InstanceMap instances = load_instances(instance_paths, parse_failures);
      if (instances.size() != 1) {
        std::cerr << "error: rank expects exactly one instance\n";
        return kConfigError;
      }
      std::ifstream mf(model_file);
      if (!mf) {
        std::cerr << "error: cannot open " << model_file << "\n";
        return kConfigError;
      }
      std::stringstream buf;
      buf << mf.rdbuf();
      RankingModel model = RankingModel::from_json(buf.str());
      LabeledBundle bundle = build_labeled_bundle(instances, read_jsonl(dataset_path));
      const std::string id = instances.begin()->first;
      std::vector<LabeledRow> rows;
      for (const LabeledRow& r : bundle.dataset.rows)
        if (r.instance_id == id) rows.push_back(r);
      if (rows.empty()) {
        std::cerr << "error: no evaluated rows for instance " << id << "\n";
        return kConfigError;
      }
      SelectionResult sel = rank_and_select(model, rows, top_k);
      for (const std::string& key : sel.selected_keys) std::cout << key << "\n";
      std::cout << "best_selected_score=" << fmt(sel.best_selected_score)
                << " rmse=" << fmt(sel.rmse) << "\n";
      return parse_failures ? kPartialFailure : kOk;
    }

    if (cmd_bench->parsed()) {
      int parse_failures = 0;
      InstanceMap instances = load_instances(instance_paths, parse_failures);
      if (instances.empty()) return kConfigError;
      BenchmarkOptions opt;
      opt.top_k = top_k;
      opt.control = control;
      opt.sided = sided;
      BenchmarkResult res = run_benchmark(instances, read_jsonl(dataset_path), opt);
      for (const std::string& w : res.warnings) std::cerr << "warning: " << w << "\n";

      ReportInputs rin;
      rin.table = res.table;
      rin.friedman = res.friedman;
      rin.has_friedman = res.has_friedman;
      rin.pairwise = res.pairwise;
      rin.prediction_scatter = res.prediction_scatter;
      if (res.table.n() >= 2) {
        std::vector<std::vector<double>> feats;
        for (const std::string& id : res.table.instances)
          feats.push_back(extract_instance_features(instances.at(id)).to_vector());
        rin.pca = pca(feats);
        rin.pca_labels = res.table.instances;
        rin.has_pca = true;
      }
      for (const std::string& f : emit_report(out_path, rin)) std::cout << f << "\n";
      return parse_failures ? kPartialFailure : kOk;
    }

    if (cmd_stats->parsed()) {
      ComparisonTable table = read_scores_csv(dataset_path);
      auto col = [&](const std::string& name) {
        for (size_t j = 0; j < table.methods.size(); ++j)
          if (table.methods[j] == name) return static_cast<int>(j);
        throw std::runtime_error("unknown method: " + name);
      };
      FriedmanResult fr = friedman_statistic(table);
      std::cout << "friedman_statistic=" << fmt(fr.statistic) << " p=" << fmt(fr.p_value) << "\n";
      for (size_t j = 0; j < table.methods.size(); ++j)
        std::cout << "mean_rank " << table.methods[j] << "=" << fmt(fr.mean_ranks[j]) << "\n";
      std::vector<std::string> targets = versus;
      if (targets.empty())
        for (const std::string& m : table.methods)
          if (m != control) targets.push_back(m);
      for (const std::string& m : targets) {
        PairwiseResult pw = aligned_rank_pairwise(table, col(control), col(m), sided);
        std::cout << control << " vs " << m << ": z=" << fmt(pw.z) << " p=" << fmt(pw.p_value)
                  << "\n";
      }
      return kOk;
    }

    if (cmd_pca->parsed()) {
      int parse_failures = 0;
      InstanceMap instances = load_instances(instance_paths, parse_failures);
      if (instances.size() < 2) {
        std::cerr << "error: pca needs at least 2 parseable instances\n";
        return kConfigError;
      }
      std::vector<std::vector<double>> feats;
      std::vector<std::string> labels;
      for (const auto& [id, inst] : instances) {
        feats.push_back(extract_instance_features(inst).to_vector());
        labels.push_back(id);
      }
      PcaResult res = pca(feats);
      for (int c = 0; c < std::min<int>(components, static_cast<int>(res.components.size())); ++c)
        std::cout << "component " << c + 1
                  << " explained_variance=" << fmt(res.explained_variance_ratio[static_cast<size_t>(c)])
                  << "\n";
      if (!out_path.empty() && !res.projected.empty() && res.projected[0].size() >= 2) {
        std::filesystem::create_directories(out_path);
        std::ostringstream csv;
        csv << "label";
        for (int c = 0; c < std::min<int>(components, static_cast<int>(res.components.size())); ++c)
          csv << ",pc" << c + 1;
        csv << '\n';
        ScatterSeries s;
        for (size_t i = 0; i < labels.size(); ++i) {
          csv << csv_escape(labels[i]);
          for (int c = 0; c < std::min<int>(components, static_cast<int>(res.components.size())); ++c)
            csv << ',' << fmt(res.projected[i][static_cast<size_t>(c)]);
          csv << '\n';
          s.points.emplace_back(res.projected[i][0], res.projected[i][1]);
        }
        write_text_file(out_path + "/pca_projection.csv", csv.str());
        write_text_file(out_path + "/pca_scatter.svg",
                        svg_scatter({s}, "PC1", "PC2", "Instance features, first two components"));
        std::cout << out_path << "/pca_projection.csv\n" << out_path << "/pca_scatter.svg\n";
      }
      return parse_failures ? kPartialFailure : kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}
