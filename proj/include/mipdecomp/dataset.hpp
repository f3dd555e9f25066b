#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mipdecomp/decomposition.hpp"
#include "mipdecomp/lagrangian.hpp"

namespace mipdecomp {

struct EvalRecord {
  double lr_bound = 0.0;
  double lp_bound = 0.0;
  std::optional<double> best_primal;
  double time_s = 0.0;
  double gap_pct = 0.0;
  bool gap_degenerate = false;
  bool ok = true;
  std::string failure;
  std::vector<std::string> statuses;  // one per subproblem

  static EvalRecord from_result(const EvaluationResult& r);
};

/// One JSONL line: the relaxed set plus (after evaluation) the eval block.
/// `raw` keeps the exact source line so untouched records round-trip
/// byte-for-byte when the file is rewritten.
struct DatasetRecord {
  std::string instance;
  std::vector<int> relaxed;
  std::string source;
  std::optional<EvalRecord> eval;
  std::string raw;

  std::string to_json_line() const;
  static DatasetRecord from_json_line(const std::string& line);
};

std::vector<DatasetRecord> read_jsonl(const std::string& path);

/// Writes all records, one JSON object per line, via a temp file + rename so
/// a crash never leaves a half-written dataset.
void write_jsonl(const std::string& path, const std::vector<DatasetRecord>& records);

void append_jsonl(const std::string& path, const std::vector<DatasetRecord>& records);

DatasetRecord make_record(const Decomposition& decomp);

}  // namespace mipdecomp
