#pragma once

#include <memory>
#include <string>
#include <vector>

namespace mipdecomp {

using Matrix = std::vector<std::vector<double>>;  // row-major

enum class ModelKind { Ridge, Lasso, Knn, Voting, RcRidge, RcLasso };

std::string to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);

/// A trained regressor over raw feature vectors. Feature min-max
/// normalization parameters are learned from the training rows and applied
/// inside predict, so callers always pass raw features.
struct RankingModel {
  ModelKind kind = ModelKind::Ridge;
  // Normalization learned on the training set, per raw feature column.
  std::vector<double> feature_min, feature_max;
  // Optional column subset applied before normalization (rc-only models).
  std::vector<int> columns;  // empty = all
  // Linear models.
  std::vector<double> weights;
  double intercept = 0.0;
  double alpha = 0.0;
  // KNN.
  int k = 0;
  Matrix stored_x;  // normalized training rows
  std::vector<double> stored_y;
  // Voting.
  std::vector<RankingModel> base_models;

  double predict(const std::vector<double>& raw_features) const;
  std::string to_json() const;
  static RankingModel from_json(const std::string& text);
};

/// Ridge: min ||y - Xw - w0||^2 + alpha*||w||^2 with an unpenalized
/// intercept, solved by normal equations on centered data. Throws for a
/// rank-deficient system at alpha = 0.
RankingModel fit_ridge(const Matrix& x, const std::vector<double>& y, double alpha);

/// Lasso: min (1/2n)||y - Xw - w0||^2 + alpha*||w||_1 by cyclic coordinate
/// descent with soft thresholding; tolerance 1e-8 on coefficient change.
RankingModel fit_lasso(const Matrix& x, const std::vector<double>& y, double alpha);

/// Mean of the k nearest training rows by Euclidean distance in normalized
/// feature space; ties broken by row index.
RankingModel fit_knn(const Matrix& x, const std::vector<double>& y, int k);

/// Unweighted mean of base model predictions.
RankingModel fit_voting(std::vector<RankingModel> models);

/// Restrict the design matrix to a column subset before fitting; predictions
/// still accept full raw feature vectors.
RankingModel fit_on_columns(ModelKind kind, const Matrix& x, const std::vector<double>& y,
                            const std::vector<int>& columns, double alpha);

}  // namespace mipdecomp
