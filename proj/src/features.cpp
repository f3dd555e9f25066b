#include "mipdecomp/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace mipdecomp {

namespace {

struct Summary {
  double min = 0, mean = 0, max = 0, stddev = 0;
};

Summary summarize(const std::vector<double>& xs) {
  Summary s;
  if (xs.empty()) return s;
  s.min = *std::min_element(xs.begin(), xs.end());
  s.max = *std::max_element(xs.begin(), xs.end());
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(xs.size()));
  return s;
}

}  // namespace

DecompositionFeatureVector extract_features(const MipInstance& instance,
                                            const Decomposition& decomp,
                                            const DecompositionStats& stats) {
  DecompositionFeatureVector f;
  const double m = static_cast<double>(stats.m);
  const double n = static_cast<double>(stats.n);
  f.relaxed_prop = stats.m_l / m;
  f.subproblem_count_prop = stats.K / m;
  f.largest_subproblem_var_prop = stats.largest_subproblem_vars / n;

  std::vector<double> var_props;
  var_props.reserve(decomp.subproblems.size());
  for (const auto& sp : decomp.subproblems)
    var_props.push_back(static_cast<double>(sp.variables.size()) / n);
  Summary vp = summarize(var_props);
  f.min_subproblem_var_prop = vp.min;
  f.mean_subproblem_var_prop = vp.mean;
  f.max_subproblem_var_prop = vp.max;
  f.stddev_subproblem_var_prop = vp.stddev;

  Summary bd = summarize(stats.block_densities);
  f.min_block_density = bd.min;
  f.mean_block_density = bd.mean;
  f.max_block_density = bd.max;
  f.stddev_block_density = bd.stddev;

  f.single_var_subproblem_prop =
      stats.K > 0 ? static_cast<double>(stats.single_var_subproblems) / stats.K : 0.0;
  const double total_nz = static_cast<double>(instance.nonzeros());
  f.border_nz_prop = total_nz > 0 ? static_cast<double>(stats.border_nz) / total_nz : 0.0;

  // Relaxed-constraint aggregates; all zero for an empty border.
  if (!decomp.relaxed.empty()) {
    double nz_prop = 0, bin_int = 0, abs_rhs = 0, sum_obj = 0;
    for (int r : decomp.relaxed) {
      const Constraint& c = instance.constraints[static_cast<size_t>(r)];
      nz_prop += static_cast<double>(c.entries.size()) / n;
      int discrete = 0;
      double obj = 0;
      for (const auto& e : c.entries) {
        if (instance.is_integer_kind(e.column)) ++discrete;
        obj += instance.objective[static_cast<size_t>(e.column)];
      }
      if (!c.entries.empty())
        bin_int += static_cast<double>(discrete) / static_cast<double>(c.entries.size());
      abs_rhs += std::fabs(c.rhs);
      sum_obj += obj;
    }
    const double ml = static_cast<double>(decomp.relaxed.size());
    f.avg_rc_nonzero_prop = nz_prop / ml;
    f.avg_rc_bin_int_prop = bin_int / ml;
    f.avg_rc_abs_rhs = abs_rhs / ml;
    f.avg_rc_sum_obj = sum_obj / ml;
  }
  return f;
}

std::vector<double> DecompositionFeatureVector::to_vector() const {
  return {relaxed_prop,
          subproblem_count_prop,
          largest_subproblem_var_prop,
          min_subproblem_var_prop,
          mean_subproblem_var_prop,
          max_subproblem_var_prop,
          stddev_subproblem_var_prop,
          min_block_density,
          mean_block_density,
          max_block_density,
          stddev_block_density,
          single_var_subproblem_prop,
          border_nz_prop,
          avg_rc_nonzero_prop,
          avg_rc_bin_int_prop,
          avg_rc_abs_rhs,
          avg_rc_sum_obj};
}

std::vector<std::string> DecompositionFeatureVector::field_names() {
  return {"relaxed_prop",
          "subproblem_count_prop",
          "largest_subproblem_var_prop",
          "min_subproblem_var_prop",
          "mean_subproblem_var_prop",
          "max_subproblem_var_prop",
          "stddev_subproblem_var_prop",
          "min_block_density",
          "mean_block_density",
          "max_block_density",
          "stddev_block_density",
          "single_var_subproblem_prop",
          "border_nz_prop",
          "avg_rc_nonzero_prop",
          "avg_rc_bin_int_prop",
          "avg_rc_abs_rhs",
          "avg_rc_sum_obj"};
}

std::vector<int> DecompositionFeatureVector::rc_feature_columns() { return {13, 14, 15, 16}; }

std::vector<double> min_max_normalize(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("min_max_normalize: empty input");
  double lo = *std::min_element(values.begin(), values.end());
  double hi = *std::max_element(values.begin(), values.end());
  std::vector<double> out(values.size(), 0.0);
  if (hi > lo)
    for (size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - lo) / (hi - lo);
  return out;
}

LabeledDataset label_dataset(const std::vector<EvaluatedDecomposition>& evaluated) {
  LabeledDataset ds;
  std::map<std::string, std::vector<int>> by_instance;
  for (size_t i = 0; i < evaluated.size(); ++i)
    by_instance[evaluated[i].instance_id].push_back(static_cast<int>(i));

  for (const auto& [instance_id, idx] : by_instance) {
    std::vector<double> gaps, times;
    for (int i : idx) {
      gaps.push_back(evaluated[static_cast<size_t>(i)].gap_pct);
      times.push_back(evaluated[static_cast<size_t>(i)].time_seconds);
    }
    std::vector<double> g = min_max_normalize(gaps);
    std::vector<double> t = min_max_normalize(times);
    if (idx.size() < 2) ds.degenerate_instances.push_back(instance_id);

    InstanceNormalization norm;
    norm.instance_id = instance_id;
    norm.gap_min = *std::min_element(gaps.begin(), gaps.end());
    norm.gap_max = *std::max_element(gaps.begin(), gaps.end());
    norm.time_min = *std::min_element(times.begin(), times.end());
    norm.time_max = *std::max_element(times.begin(), times.end());
    ds.normalization.push_back(norm);

    for (size_t k = 0; k < idx.size(); ++k) {
      const auto& e = evaluated[static_cast<size_t>(idx[k])];
      LabeledRow row;
      row.instance_id = e.instance_id;
      row.key = e.key;
      row.features = e.features;
      row.raw_gap = e.gap_pct;
      row.raw_time = e.time_seconds;
      row.normalized_gap = g[k];
      row.normalized_time = t[k];
      row.score = 0.5 * g[k] + 0.5 * t[k];
      ds.rows.push_back(std::move(row));
    }
  }
  return ds;
}

}  // namespace mipdecomp
