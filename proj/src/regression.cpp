#include "mipdecomp/regression.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace mipdecomp {

namespace {

using nlohmann::json;

std::vector<double> subset(const std::vector<double>& row, const std::vector<int>& columns) {
  if (columns.empty()) return row;
  std::vector<double> out;
  out.reserve(columns.size());
  for (int c : columns) out.push_back(row.at(static_cast<size_t>(c)));
  return out;
}

// Column-wise min/max over the (already column-subset) training matrix.
void learn_normalization(const Matrix& x, std::vector<double>& mins, std::vector<double>& maxs) {
  if (x.empty()) throw std::invalid_argument("empty training set");
  const size_t p = x[0].size();
  mins.assign(p, 0.0);
  maxs.assign(p, 0.0);
  for (size_t j = 0; j < p; ++j) {
    double lo = x[0][j], hi = x[0][j];
    for (const auto& row : x) {
      lo = std::min(lo, row[j]);
      hi = std::max(hi, row[j]);
    }
    mins[j] = lo;
    maxs[j] = hi;
  }
}

std::vector<double> apply_normalization(const std::vector<double>& row,
                                        const std::vector<double>& mins,
                                        const std::vector<double>& maxs) {
  std::vector<double> out(row.size(), 0.0);
  for (size_t j = 0; j < row.size(); ++j) {
    double range = maxs[j] - mins[j];
    out[j] = range > 0 ? (row[j] - mins[j]) / range : 0.0;
  }
  return out;
}

Matrix normalize_matrix(const Matrix& x, const std::vector<double>& mins,
                        const std::vector<double>& maxs) {
  Matrix out;
  out.reserve(x.size());
  for (const auto& row : x) out.push_back(apply_normalization(row, mins, maxs));
  return out;
}

// Gaussian elimination with partial pivoting; throws on a singular system.
std::vector<double> solve_linear_system(Matrix a, std::vector<double> b) {
  const size_t p = b.size();
  for (size_t col = 0; col < p; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < p; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    if (std::fabs(a[piv][col]) < 1e-12)
      throw std::runtime_error("rank-deficient system (needs alpha > 0)");
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (size_t r = col + 1; r < p; ++r) {
      double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (size_t c = col; c < p; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> w(p, 0.0);
  for (size_t col = p; col-- > 0;) {
    double s = b[col];
    for (size_t c = col + 1; c < p; ++c) s -= a[col][c] * w[c];
    w[col] = s / a[col][col];
  }
  return w;
}

struct Centered {
  Matrix x;
  std::vector<double> y;
  std::vector<double> x_mean;
  double y_mean = 0.0;
};

Centered center(const Matrix& x, const std::vector<double>& y) {
  Centered c;
  const size_t n = x.size(), p = x.empty() ? 0 : x[0].size();
  c.x_mean.assign(p, 0.0);
  for (const auto& row : x)
    for (size_t j = 0; j < p; ++j) c.x_mean[j] += row[j];
  for (double& m : c.x_mean) m /= static_cast<double>(n);
  c.y_mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  c.x = x;
  for (auto& row : c.x)
    for (size_t j = 0; j < p; ++j) row[j] -= c.x_mean[j];
  c.y = y;
  for (double& v : c.y) v -= c.y_mean;
  return c;
}

RankingModel fit_linear_common(ModelKind kind, const Matrix& raw_x, const std::vector<double>& y,
                               const std::vector<int>& columns, double alpha) {
  if (raw_x.size() < 2) throw std::invalid_argument("need at least 2 training rows");
  if (raw_x.size() != y.size()) throw std::invalid_argument("X/y size mismatch");
  if (alpha < 0) throw std::invalid_argument("alpha must be >= 0");

  RankingModel model;
  model.kind = kind;
  model.columns = columns;
  model.alpha = alpha;

  Matrix xs;
  xs.reserve(raw_x.size());
  for (const auto& row : raw_x) xs.push_back(subset(row, columns));
  learn_normalization(xs, model.feature_min, model.feature_max);
  Matrix xn = normalize_matrix(xs, model.feature_min, model.feature_max);
  Centered c = center(xn, y);
  const size_t n = xn.size(), p = xn[0].size();

  const bool is_lasso = kind == ModelKind::Lasso || kind == ModelKind::RcLasso;
  if (!is_lasso) {
    // Normal equations (X'X + alpha I) w = X'y on centered data.
    Matrix gram(p, std::vector<double>(p, 0.0));
    std::vector<double> xty(p, 0.0);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < p; ++j) {
        xty[j] += c.x[i][j] * c.y[i];
        for (size_t k = j; k < p; ++k) gram[j][k] += c.x[i][j] * c.x[i][k];
      }
    for (size_t j = 0; j < p; ++j) {
      for (size_t k = 0; k < j; ++k) gram[j][k] = gram[k][j];
      gram[j][j] += alpha;
    }
    model.weights = solve_linear_system(std::move(gram), std::move(xty));
  } else {
    // Cyclic coordinate descent with soft thresholding.
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> col_sq(p, 0.0);
    for (size_t j = 0; j < p; ++j) {
      for (size_t i = 0; i < n; ++i) col_sq[j] += c.x[i][j] * c.x[i][j];
      col_sq[j] *= inv_n;
    }
    std::vector<double> w(p, 0.0);
    std::vector<double> resid = c.y;  // y - Xw, starts at w = 0
    for (int sweep = 0; sweep < 10000; ++sweep) {
      double max_change = 0.0;
      for (size_t j = 0; j < p; ++j) {
        if (col_sq[j] == 0.0) continue;  // constant column stays at zero
        double rho = 0.0;
        for (size_t i = 0; i < n; ++i) rho += c.x[i][j] * resid[i];
        rho = rho * inv_n + col_sq[j] * w[j];
        double wj = 0.0;
        if (rho > alpha) wj = (rho - alpha) / col_sq[j];
        else if (rho < -alpha) wj = (rho + alpha) / col_sq[j];
        double delta = wj - w[j];
        if (delta != 0.0) {
          for (size_t i = 0; i < n; ++i) resid[i] -= delta * c.x[i][j];
          w[j] = wj;
        }
        max_change = std::max(max_change, std::fabs(delta));
      }
      if (max_change < 1e-8) break;
    }
    model.weights = std::move(w);
  }

  model.intercept = c.y_mean;
  for (size_t j = 0; j < p; ++j) model.intercept -= model.weights[j] * c.x_mean[j];
  return model;
}

}  // namespace

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Ridge: return "ridge";
    case ModelKind::Lasso: return "lasso";
    case ModelKind::Knn: return "knn";
    case ModelKind::Voting: return "voting";
    case ModelKind::RcRidge: return "rc_ridge";
    case ModelKind::RcLasso: return "rc_lasso";
  }
  return "ridge";
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "ridge") return ModelKind::Ridge;
  if (s == "lasso") return ModelKind::Lasso;
  if (s == "knn") return ModelKind::Knn;
  if (s == "voting") return ModelKind::Voting;
  if (s == "rc_ridge") return ModelKind::RcRidge;
  if (s == "rc_lasso") return ModelKind::RcLasso;
  throw std::invalid_argument("unknown model kind: " + s);
}

RankingModel fit_ridge(const Matrix& x, const std::vector<double>& y, double alpha) {
  return fit_linear_common(ModelKind::Ridge, x, y, {}, alpha);
}

RankingModel fit_lasso(const Matrix& x, const std::vector<double>& y, double alpha) {
  return fit_linear_common(ModelKind::Lasso, x, y, {}, alpha);
}

RankingModel fit_knn(const Matrix& x, const std::vector<double>& y, int k) {
  if (x.empty()) throw std::invalid_argument("empty training set");
  if (k < 1 || static_cast<size_t>(k) > x.size())
    throw std::invalid_argument("k must be in [1, training rows]");
  RankingModel model;
  model.kind = ModelKind::Knn;
  model.k = k;
  learn_normalization(x, model.feature_min, model.feature_max);
  model.stored_x = normalize_matrix(x, model.feature_min, model.feature_max);
  model.stored_y = y;
  return model;
}

RankingModel fit_voting(std::vector<RankingModel> models) {
  if (models.size() < 2) throw std::invalid_argument("voting needs at least 2 base models");
  RankingModel model;
  model.kind = ModelKind::Voting;
  model.base_models = std::move(models);
  return model;
}

RankingModel fit_on_columns(ModelKind kind, const Matrix& x, const std::vector<double>& y,
                            const std::vector<int>& columns, double alpha) {
  return fit_linear_common(kind, x, y, columns, alpha);
}

double RankingModel::predict(const std::vector<double>& raw) const {
  if (kind == ModelKind::Voting) {
    double sum = 0.0;
    for (const auto& b : base_models) sum += b.predict(raw);
    return sum / static_cast<double>(base_models.size());
  }
  std::vector<double> xn = apply_normalization(subset(raw, columns), feature_min, feature_max);
  if (kind == ModelKind::Knn) {
    // k smallest distances, deterministic tie-break by row index.
    std::vector<std::pair<double, int>> dist;
    dist.reserve(stored_x.size());
    for (size_t i = 0; i < stored_x.size(); ++i) {
      double d2 = 0.0;
      for (size_t j = 0; j < xn.size(); ++j) {
        double d = stored_x[i][j] - xn[j];
        d2 += d * d;
      }
      dist.emplace_back(d2, static_cast<int>(i));
    }
    std::sort(dist.begin(), dist.end());
    double sum = 0.0;
    for (int i = 0; i < k; ++i) sum += stored_y[static_cast<size_t>(dist[static_cast<size_t>(i)].second)];
    return sum / k;
  }
  double z = intercept;
  for (size_t j = 0; j < weights.size(); ++j) z += weights[j] * xn[j];
  return z;
}

std::string RankingModel::to_json() const {
  json j;
  j["kind"] = to_string(kind);
  j["feature_min"] = feature_min;
  j["feature_max"] = feature_max;
  j["columns"] = columns;
  j["weights"] = weights;
  j["intercept"] = intercept;
  j["alpha"] = alpha;
  j["k"] = k;
  j["stored_x"] = stored_x;
  j["stored_y"] = stored_y;
  std::vector<json> bases;
  for (const auto& b : base_models) bases.push_back(json::parse(b.to_json()));
  j["base_models"] = bases;
  return j.dump(2);
}

RankingModel RankingModel::from_json(const std::string& text) {
  json j = json::parse(text);
  RankingModel m;
  m.kind = model_kind_from_string(j.at("kind").get<std::string>());
  m.feature_min = j.value("feature_min", std::vector<double>{});
  m.feature_max = j.value("feature_max", std::vector<double>{});
  m.columns = j.value("columns", std::vector<int>{});
  m.weights = j.value("weights", std::vector<double>{});
  m.intercept = j.value("intercept", 0.0);
  m.alpha = j.value("alpha", 0.0);
  m.k = j.value("k", 0);
  m.stored_x = j.value("stored_x", Matrix{});
  m.stored_y = j.value("stored_y", std::vector<double>{});
  for (const auto& b : j.value("base_models", std::vector<json>{}))
    m.base_models.push_back(from_json(b.dump()));
  return m;
}

}  // namespace mipdecomp
