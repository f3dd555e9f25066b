#pragma once

#include <string>
#include <vector>

namespace mipdecomp {

struct ComparisonTable {
  std::vector<std::string> methods;    // k labels
  std::vector<std::string> instances;  // n labels
  std::vector<std::vector<double>> scores;  // n x k, lower is better

  int k() const { return static_cast<int>(methods.size()); }
  int n() const { return static_cast<int>(instances.size()); }
  void validate() const;
};

/// Average ranks of one observation vector (ties get the mean rank).
std::vector<double> average_ranks(const std::vector<double>& values);

struct FriedmanResult {
  double statistic = 0.0;  // F_f, chi-square with k-1 dof under the null
  double p_value = 1.0;
  std::vector<double> mean_ranks;  // R_j per method
};

FriedmanResult friedman_statistic(const ComparisonTable& table);

struct PairwiseResult {
  double z = 0.0;
  double p_value = 1.0;  // two-sided by default
  double control_mean_rank = 0.0;
  double comparison_mean_rank = 0.0;
};

/// Friedman aligned-rank pairwise z-test between two methods. Aligned
/// observations subtract the instance mean; all n*k values are ranked
/// jointly. `sided` is 1 or 2.
PairwiseResult aligned_rank_pairwise(const ComparisonTable& table, int control_method,
                                     int comparison_method, int sided = 2);

/// Upper-tail chi-square p-value via the regularized incomplete gamma
/// function (series + continued fraction).
double chi_square_sf(double x, int dof);

/// Standard normal CDF via erfc.
double normal_cdf(double z);

}  // namespace mipdecomp
