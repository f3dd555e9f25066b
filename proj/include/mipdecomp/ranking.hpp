#pragma once

#include <string>
#include <vector>

#include "mipdecomp/features.hpp"
#include "mipdecomp/regression.hpp"

namespace mipdecomp {

struct SelectionResult {
  std::vector<std::string> selected_keys;  // predicted-best first
  double best_selected_score = 0.0;        // true score, instance-renormalized
  double rmse = 0.0;                       // prediction RMSE on the instance
};

/// Sorts one instance's rows by predicted score ascending (ties by key),
/// keeps the top_k, and reports the minimum true score among them after
/// re-min-max-normalizing over the instance's whole evaluated population.
SelectionResult rank_and_select(const RankingModel& model, const std::vector<LabeledRow>& rows,
                                int top_k = 8);

/// Default hyperparameters: ridge alpha 0.01, lasso alpha 0.001, knn k=5,
/// voting = mean of those three; rc_* variants use only the four
/// relaxed-constraint feature columns.
RankingModel fit_model(ModelKind kind, const Matrix& x, const std::vector<double>& y);

struct LoioRow {
  std::string instance_id;
  double selected_score = 0.0;
  double rmse = 0.0;
};

struct LoioResult {
  ModelKind kind;
  std::vector<LoioRow> per_instance;
  double mean_selected_score = 0.0;
};

/// Leave-one-instance-out: train on every other instance's rows, select on
/// the held-out one. Instances appear in sorted id order.
LoioResult leave_one_instance_out(const LabeledDataset& dataset, ModelKind kind, int top_k = 8);

/// Ridge or lasso restricted to the four relaxed-constraint aggregates.
RankingModel rc_only_model(const LabeledDataset& dataset, ModelKind regularizer);

/// Proportion of rows with every feature inside [Q1 - 1.5 IQR, Q3 + 1.5 IQR].
double feature_spread_diagnostic(const LabeledDataset& dataset);

/// Linear-interpolation percentile of a sample; p in [0,1].
double percentile(std::vector<double> values, double p);

}  // namespace mipdecomp
