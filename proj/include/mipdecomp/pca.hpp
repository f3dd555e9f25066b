#pragma once

#include <vector>

namespace mipdecomp {

struct PcaResult {
  std::vector<std::vector<double>> components;  // orthonormal rows, in the kept-column space
  std::vector<double> explained_variance_ratio;
  std::vector<std::vector<double>> projected;  // one coordinate row per input row
  std::vector<int> kept_columns;               // zero-variance columns are dropped
};

/// Standardizes columns (mean 0, variance 1; constant columns dropped), then
/// eigen-decomposes the covariance by cyclic Jacobi rotations. Components
/// are ordered by descending eigenvalue, each signed so its largest
/// magnitude entry is positive.
PcaResult pca(const std::vector<std::vector<double>>& features);

/// Symmetric eigen-decomposition by cyclic Jacobi rotations, off-diagonal
/// norm threshold 1e-10. Returns (eigenvalues, eigenvectors as rows),
/// unordered.
std::pair<std::vector<double>, std::vector<std::vector<double>>> jacobi_eigen(
    std::vector<std::vector<double>> symmetric);

}  // namespace mipdecomp
