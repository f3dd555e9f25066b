#pragma once

#include <string>
#include <vector>

#include "mipdecomp/decomposition.hpp"
#include "mipdecomp/lagrangian.hpp"

namespace mipdecomp {

/// Per-decomposition features. The last four entries aggregate statistics of
/// the relaxed (border) constraints and back the border-only models.
struct DecompositionFeatureVector {
  double relaxed_prop = 0;             // m_l / M
  double subproblem_count_prop = 0;    // K / M
  double largest_subproblem_var_prop = 0;
  double min_subproblem_var_prop = 0;
  double mean_subproblem_var_prop = 0;
  double max_subproblem_var_prop = 0;
  double stddev_subproblem_var_prop = 0;
  double min_block_density = 0;
  double mean_block_density = 0;
  double max_block_density = 0;
  double stddev_block_density = 0;
  double single_var_subproblem_prop = 0;  // single-var blocks / K
  double border_nz_prop = 0;              // border nonzeros / total nonzeros
  double avg_rc_nonzero_prop = 0;   // mean (row nz / n) over relaxed rows
  double avg_rc_bin_int_prop = 0;   // mean fraction of discrete vars per relaxed row
  double avg_rc_abs_rhs = 0;        // mean |rhs| over relaxed rows
  double avg_rc_sum_obj = 0;        // mean sum of obj coefficients per relaxed row

  std::vector<double> to_vector() const;
  static std::vector<std::string> field_names();
  /// Column positions of the four relaxed-constraint aggregates.
  static std::vector<int> rc_feature_columns();
};

DecompositionFeatureVector extract_features(const MipInstance& instance,
                                            const Decomposition& decomp,
                                            const DecompositionStats& stats);

/// (v - min)/(max - min) per element; a constant input maps to all zeros.
std::vector<double> min_max_normalize(const std::vector<double>& values);

struct LabeledRow {
  std::string instance_id;
  std::string key;
  std::vector<double> features;
  double raw_gap = 0;
  double raw_time = 0;
  double normalized_gap = 0;
  double normalized_time = 0;
  double score = 0;  // 0.5*g + 0.5*t
};

struct InstanceNormalization {
  std::string instance_id;
  double gap_min = 0, gap_max = 0, time_min = 0, time_max = 0;
};

struct LabeledDataset {
  std::vector<LabeledRow> rows;
  std::vector<InstanceNormalization> normalization;
  std::vector<std::string> degenerate_instances;  // had a single decomposition
};

struct EvaluatedDecomposition {
  std::string instance_id;
  std::string key;
  std::vector<double> features;
  double gap_pct = 0;
  double time_seconds = 0;
};

/// Instance-by-instance min-max labeling: g and t each span [0,1] within an
/// instance, score = 0.5g + 0.5t. Instances with one decomposition get score
/// 0 and are listed as degenerate.
LabeledDataset label_dataset(const std::vector<EvaluatedDecomposition>& evaluated);

}  // namespace mipdecomp
