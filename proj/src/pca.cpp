#include "mipdecomp/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mipdecomp {

std::pair<std::vector<double>, std::vector<std::vector<double>>> jacobi_eigen(
    std::vector<std::vector<double>> a) {
  const size_t p = a.size();
  std::vector<std::vector<double>> v(p, std::vector<double>(p, 0.0));
  for (size_t i = 0; i < p; ++i) v[i][i] = 1.0;

  auto off_norm = [&]() {
    double s = 0.0;
    for (size_t i = 0; i < p; ++i)
      for (size_t j = i + 1; j < p; ++j) s += a[i][j] * a[i][j];
    return std::sqrt(2.0 * s);
  };

  for (int sweep = 0; sweep < 200 && off_norm() > 1e-10; ++sweep) {
    for (size_t i = 0; i < p; ++i) {
      for (size_t j = i + 1; j < p; ++j) {
        if (std::fabs(a[i][j]) < 1e-300) continue;
        double theta = (a[j][j] - a[i][i]) / (2.0 * a[i][j]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (size_t k = 0; k < p; ++k) {
          double aki = a[k][i], akj = a[k][j];
          a[k][i] = c * aki - s * akj;
          a[k][j] = s * aki + c * akj;
        }
        for (size_t k = 0; k < p; ++k) {
          double aik = a[i][k], ajk = a[j][k];
          a[i][k] = c * aik - s * ajk;
          a[j][k] = s * aik + c * ajk;
        }
        for (size_t k = 0; k < p; ++k) {
          double vki = v[k][i], vkj = v[k][j];
          v[k][i] = c * vki - s * vkj;
          v[k][j] = s * vki + c * vkj;
        }
      }
    }
  }

  std::vector<double> eig(p);
  std::vector<std::vector<double>> vectors(p, std::vector<double>(p));
  for (size_t i = 0; i < p; ++i) {
    eig[i] = a[i][i];
    for (size_t k = 0; k < p; ++k) vectors[i][k] = v[k][i];  // row = eigenvector i
  }
  return {eig, vectors};
}

PcaResult pca(const std::vector<std::vector<double>>& features) {
  const size_t n = features.size();
  if (n < 2) throw std::invalid_argument("pca needs at least 2 rows");
  const size_t p_all = features[0].size();
  for (const auto& row : features)
    if (row.size() != p_all) throw std::invalid_argument("ragged feature matrix");

  // Standardize, dropping constant columns.
  PcaResult res;
  std::vector<std::vector<double>> z;  // n x p_kept
  std::vector<double> mean(p_all, 0.0), sd(p_all, 0.0);
  for (size_t j = 0; j < p_all; ++j) {
    for (size_t i = 0; i < n; ++i) mean[j] += features[i][j];
    mean[j] /= static_cast<double>(n);
    for (size_t i = 0; i < n; ++i) {
      double d = features[i][j] - mean[j];
      sd[j] += d * d;
    }
    sd[j] = std::sqrt(sd[j] / static_cast<double>(n));
    if (sd[j] > 1e-12) res.kept_columns.push_back(static_cast<int>(j));
  }
  const size_t p = res.kept_columns.size();
  if (p == 0) throw std::invalid_argument("all feature columns are constant");
  z.assign(n, std::vector<double>(p, 0.0));
  for (size_t i = 0; i < n; ++i)
    for (size_t jj = 0; jj < p; ++jj) {
      int j = res.kept_columns[jj];
      z[i][jj] = (features[i][static_cast<size_t>(j)] - mean[static_cast<size_t>(j)]) /
                 sd[static_cast<size_t>(j)];
    }

  // Covariance of the standardized data (1/(n-1)).
  std::vector<std::vector<double>> cov(p, std::vector<double>(p, 0.0));
  for (size_t i = 0; i < n; ++i)
    for (size_t a = 0; a < p; ++a)
      for (size_t b = a; b < p; ++b) cov[a][b] += z[i][a] * z[i][b];
  for (size_t a = 0; a < p; ++a)
    for (size_t b = a; b < p; ++b) {
      cov[a][b] /= static_cast<double>(n - 1);
      cov[b][a] = cov[a][b];
    }

  auto [eig, vectors] = jacobi_eigen(cov);
  std::vector<int> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return eig[static_cast<size_t>(a)] > eig[static_cast<size_t>(b)]; });

  double total = 0.0;
  for (double e : eig) total += std::max(e, 0.0);
  for (int idx : order) {
    std::vector<double> comp = vectors[static_cast<size_t>(idx)];
    // Sign convention: largest-magnitude entry positive.
    size_t arg = 0;
    for (size_t j = 1; j < p; ++j)
      if (std::fabs(comp[j]) > std::fabs(comp[arg])) arg = j;
    if (comp[arg] < 0)
      for (double& c : comp) c = -c;
    res.components.push_back(std::move(comp));
    res.explained_variance_ratio.push_back(total > 0 ? std::max(eig[static_cast<size_t>(idx)], 0.0) / total : 0.0);
  }

  res.projected.assign(n, std::vector<double>(p, 0.0));
  for (size_t i = 0; i < n; ++i)
    for (size_t cidx = 0; cidx < p; ++cidx) {
      double dot = 0.0;
      for (size_t j = 0; j < p; ++j) dot += z[i][j] * res.components[cidx][j];
      res.projected[i][cidx] = dot;
    }
  return res;
}

}  // namespace mipdecomp
