#include "mipdecomp/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mipdecomp {

using nlohmann::json;

EvalRecord EvalRecord::from_result(const EvaluationResult& r) {
  EvalRecord e;
  e.lr_bound = r.lr_bound;
  e.lp_bound = r.lp_bound;
  if (r.has_best_primal) e.best_primal = r.best_primal;
  e.time_s = r.solve_time_seconds;
  e.gap_pct = r.gap_pct;
  e.gap_degenerate = r.gap_degenerate;
  e.ok = r.ok;
  e.failure = r.failure;
  for (SubproblemOutcome s : r.subproblem_statuses) e.statuses.push_back(to_string(s));
  return e;
}

std::string DatasetRecord::to_json_line() const {
  json j;
  j["instance"] = instance;
  j["relaxed"] = relaxed;
  j["source"] = source;
  if (eval) {
    json je;
    je["lr_bound"] = eval->lr_bound;
    je["lp_bound"] = eval->lp_bound;
    if (eval->best_primal) je["best_primal"] = *eval->best_primal;
    je["time_s"] = eval->time_s;
    je["gap_pct"] = eval->gap_pct;
    if (eval->gap_degenerate) je["gap_degenerate"] = true;
    je["ok"] = eval->ok;
    if (!eval->failure.empty()) je["failure"] = eval->failure;
    je["statuses"] = eval->statuses;
    j["eval"] = je;
  }
  return j.dump();
}

DatasetRecord DatasetRecord::from_json_line(const std::string& line) {
  json j = json::parse(line);
  DatasetRecord rec;
  rec.raw = line;
  rec.instance = j.at("instance").get<std::string>();
  rec.relaxed = j.at("relaxed").get<std::vector<int>>();
  rec.source = j.at("source").get<std::string>();
  if (j.contains("eval")) {
    const json& je = j["eval"];
    EvalRecord e;
    e.lr_bound = je.at("lr_bound").get<double>();
    e.lp_bound = je.at("lp_bound").get<double>();
    if (je.contains("best_primal")) e.best_primal = je["best_primal"].get<double>();
    e.time_s = je.at("time_s").get<double>();
    e.gap_pct = je.at("gap_pct").get<double>();
    e.gap_degenerate = je.value("gap_degenerate", false);
    e.ok = je.value("ok", true);
    e.failure = je.value("failure", std::string{});
    if (je.contains("statuses")) e.statuses = je["statuses"].get<std::vector<std::string>>();
    rec.eval = std::move(e);
  }
  return rec;
}

std::vector<DatasetRecord> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset: " + path);
  std::vector<DatasetRecord> records;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      records.push_back(DatasetRecord::from_json_line(line));
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return records;
}

void write_jsonl(const std::string& path, const std::vector<DatasetRecord>& records) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write dataset: " + tmp);
    for (const auto& r : records) {
      // Untouched records keep their original bytes.
      if (!r.raw.empty() && !r.eval)
        out << r.raw << '\n';
      else if (!r.raw.empty() && r.eval && r.raw.find("\"eval\"") != std::string::npos)
        out << r.raw << '\n';
      else
        out << r.to_json_line() << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed: " + path);
}

void append_jsonl(const std::string& path, const std::vector<DatasetRecord>& records) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot append to dataset: " + path);
  for (const auto& r : records) out << r.to_json_line() << '\n';
  if (!out) throw std::runtime_error("append failed: " + path);
}

DatasetRecord make_record(const Decomposition& decomp) {
  DatasetRecord rec;
  rec.instance = decomp.instance_id;
  rec.relaxed = decomp.relaxed;
  rec.source = to_string(decomp.source);
  return rec;
}

}  // namespace mipdecomp
