#include "mipdecomp/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace mipdecomp {

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("percentile of empty sample");
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = static_cast<size_t>(std::ceil(pos));
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

SelectionResult rank_and_select(const RankingModel& model, const std::vector<LabeledRow>& rows,
                                int top_k) {
  if (rows.empty()) throw std::invalid_argument("no rows for the test instance");
  const int n = static_cast<int>(rows.size());
  std::vector<double> predicted(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) predicted[static_cast<size_t>(i)] = model.predict(rows[static_cast<size_t>(i)].features);

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (predicted[static_cast<size_t>(a)] != predicted[static_cast<size_t>(b)])
      return predicted[static_cast<size_t>(a)] < predicted[static_cast<size_t>(b)];
    return rows[static_cast<size_t>(a)].key < rows[static_cast<size_t>(b)].key;
  });

  const int take = std::min(top_k, n);
  SelectionResult res;
  double best_true = std::numeric_limits<double>::infinity();
  for (int i = 0; i < take; ++i) {
    const LabeledRow& r = rows[static_cast<size_t>(order[static_cast<size_t>(i)])];
    res.selected_keys.push_back(r.key);
    best_true = std::min(best_true, r.score);
  }

  // Re-normalize the winner's true score over the instance population.
  double lo = rows[0].score, hi = rows[0].score;
  for (const auto& r : rows) {
    lo = std::min(lo, r.score);
    hi = std::max(hi, r.score);
  }
  res.best_selected_score = hi > lo ? (best_true - lo) / (hi - lo) : 0.0;

  double ss = 0.0;
  for (int i = 0; i < n; ++i) {
    double e = predicted[static_cast<size_t>(i)] - rows[static_cast<size_t>(i)].score;
    ss += e * e;
  }
  res.rmse = std::sqrt(ss / n);
  return res;
}

RankingModel fit_model(ModelKind kind, const Matrix& x, const std::vector<double>& y) {
  const int k_default = std::min<int>(5, static_cast<int>(x.size()));
  switch (kind) {
    case ModelKind::Ridge: return fit_ridge(x, y, 0.01);
    case ModelKind::Lasso: return fit_lasso(x, y, 0.001);
    case ModelKind::Knn: return fit_knn(x, y, k_default);
    case ModelKind::Voting: {
      std::vector<RankingModel> bases;
      bases.push_back(fit_ridge(x, y, 0.01));
      bases.push_back(fit_lasso(x, y, 0.001));
      bases.push_back(fit_knn(x, y, k_default));
      return fit_voting(std::move(bases));
    }
    case ModelKind::RcRidge:
      return fit_on_columns(ModelKind::RcRidge, x, y,
                            DecompositionFeatureVector::rc_feature_columns(), 0.01);
    case ModelKind::RcLasso:
      return fit_on_columns(ModelKind::RcLasso, x, y,
                            DecompositionFeatureVector::rc_feature_columns(), 0.001);
  }
  throw std::invalid_argument("unknown model kind");
}

LoioResult leave_one_instance_out(const LabeledDataset& dataset, ModelKind kind, int top_k) {
  std::map<std::string, std::vector<const LabeledRow*>> by_instance;
  for (const auto& r : dataset.rows) by_instance[r.instance_id].push_back(&r);
  if (by_instance.size() < 2)
    throw std::invalid_argument("leave-one-instance-out needs at least 2 instances");

  LoioResult out;
  out.kind = kind;
  for (const auto& [held_out, test_ptrs] : by_instance) {
    Matrix x;
    std::vector<double> y;
    for (const auto& r : dataset.rows) {
      if (r.instance_id == held_out) continue;
      x.push_back(r.features);
      y.push_back(r.score);
    }
    RankingModel model = fit_model(kind, x, y);
    std::vector<LabeledRow> test_rows;
    test_rows.reserve(test_ptrs.size());
    for (const auto* p : test_ptrs) test_rows.push_back(*p);
    SelectionResult sel = rank_and_select(model, test_rows, top_k);
    out.per_instance.push_back({held_out, sel.best_selected_score, sel.rmse});
  }
  double sum = 0.0;
  for (const auto& r : out.per_instance) sum += r.selected_score;
  out.mean_selected_score = sum / static_cast<double>(out.per_instance.size());
  return out;
}

RankingModel rc_only_model(const LabeledDataset& dataset, ModelKind regularizer) {
  if (regularizer != ModelKind::RcRidge && regularizer != ModelKind::RcLasso &&
      regularizer != ModelKind::Ridge && regularizer != ModelKind::Lasso)
    throw std::invalid_argument("rc-only model must be ridge or lasso");
  ModelKind kind = (regularizer == ModelKind::Lasso || regularizer == ModelKind::RcLasso)
                       ? ModelKind::RcLasso
                       : ModelKind::RcRidge;
  Matrix x;
  std::vector<double> y;
  for (const auto& r : dataset.rows) {
    x.push_back(r.features);
    y.push_back(r.score);
  }
  return fit_model(kind, x, y);
}

double feature_spread_diagnostic(const LabeledDataset& dataset) {
  if (dataset.rows.empty()) throw std::invalid_argument("empty dataset");
  const size_t p = dataset.rows[0].features.size();
  std::vector<double> lo(p), hi(p);
  for (size_t j = 0; j < p; ++j) {
    std::vector<double> col;
    col.reserve(dataset.rows.size());
    for (const auto& r : dataset.rows) col.push_back(r.features[j]);
    double q1 = percentile(col, 0.25);
    double q3 = percentile(col, 0.75);
    double iqr = q3 - q1;
    lo[j] = q1 - 1.5 * iqr;
    hi[j] = q3 + 1.5 * iqr;
  }
  size_t inside = 0;
  for (const auto& r : dataset.rows) {
    bool ok = true;
    for (size_t j = 0; j < p; ++j)
      if (r.features[j] < lo[j] || r.features[j] > hi[j]) {
        ok = false;
        break;
      }
    if (ok) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(dataset.rows.size());
}

}  // namespace mipdecomp
