#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mipdecomp/pca.hpp"
#include "mipdecomp/stats_tests.hpp"

namespace mipdecomp {

struct ScatterSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct BoxplotGroup {
  std::string label;
  std::vector<double> values;
};

/// Deterministic SVG output: fixed canvas, %.6g number formatting, no
/// timestamps. Same input, same bytes.
std::string svg_scatter(const std::vector<ScatterSeries>& series, const std::string& x_label,
                        const std::string& y_label, const std::string& title);

/// Box-and-whisker chart; quartiles from the shared percentile routine,
/// whiskers at the most extreme values within 1.5 IQR of the box.
std::string svg_boxplot(const std::vector<BoxplotGroup>& groups, const std::string& title);

void write_text_file(const std::string& path, const std::string& content);

std::string csv_escape(const std::string& field);

/// instance x method grid of selected scores, one header row.
std::string comparison_table_csv(const ComparisonTable& table);

struct NamedPairwise {
  std::string control, comparison;
  PairwiseResult result;
};

struct ReportInputs {
  ComparisonTable table;  // methods must be non-empty
  FriedmanResult friedman;
  bool has_friedman = false;
  std::vector<NamedPairwise> pairwise;
  PcaResult pca;
  std::vector<std::string> pca_labels;  // one per projected row
  bool has_pca = false;
  std::vector<ScatterSeries> prediction_scatter;  // predicted vs actual
};

/// Writes selected_scores.csv, stats.csv, boxplot/scatter SVGs under
/// `out_dir`. Validates inputs before touching the filesystem, so a bad
/// call leaves no partial files.
std::vector<std::string> emit_report(const std::string& out_dir, const ReportInputs& in);

}  // namespace mipdecomp
