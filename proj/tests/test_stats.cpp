#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "mipdecomp/pca.hpp"
#include "mipdecomp/stats_tests.hpp"

using namespace mipdecomp;

namespace {

// Adaptive-step Simpson quadrature of f over [lo, hi].
template <typename F>
double simpson(F f, double lo, double hi, int intervals = 20000) {
  double h = (hi - lo) / intervals;
  double s = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return s * h / 3.0;
}

double chi2_pdf(double x, int dof) {
  double a = dof / 2.0;
  return std::exp((a - 1.0) * std::log(x) - x / 2.0 - a * std::log(2.0) - std::lgamma(a));
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

}  // namespace

TEST_CASE("average ranks") {
  CHECK(average_ranks({3, 1, 2}) == std::vector<double>{3, 1, 2});
  CHECK(average_ranks({1, 1, 2}) == std::vector<double>{1.5, 1.5, 3});
  CHECK(average_ranks({5, 5, 5, 5}) == std::vector<double>{2.5, 2.5, 2.5, 2.5});
  CHECK(average_ranks({0.2, 0.9, 0.2, 0.4}) == std::vector<double>{1.5, 4, 1.5, 3});
}

TEST_CASE("Friedman statistic on a fully consistent table") {
  // three instances, all ranking the methods identically: F_f = 6
  ComparisonTable t;
  t.methods = {"m1", "m2", "m3"};
  t.instances = {"a", "b", "c"};
  t.scores = {{0.1, 0.2, 0.3}, {0.4, 0.6, 0.9}, {0.0, 0.5, 0.7}};
  FriedmanResult res = friedman_statistic(t);
  CHECK(res.statistic == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(res.mean_ranks == std::vector<double>{1, 2, 3});
  CHECK(res.p_value == doctest::Approx(chi_square_sf(6.0, 2)).epsilon(1e-12));
}

TEST_CASE("Friedman statistic vanishes on identical methods") {
  ComparisonTable t;
  t.methods = {"m1", "m2", "m3"};
  t.instances = {"a", "b"};
  t.scores = {{0.5, 0.5, 0.5}, {0.2, 0.2, 0.2}};
  FriedmanResult res = friedman_statistic(t);
  CHECK(res.statistic == doctest::Approx(0.0));
  CHECK(res.p_value == doctest::Approx(1.0));
}

TEST_CASE("Friedman statistic only depends on within-instance order") {
  ComparisonTable t;
  t.methods = {"m1", "m2"};
  t.instances = {"a", "b", "c"};
  t.scores = {{0.1, 0.3}, {0.8, 0.2}, {0.4, 0.5}};
  ComparisonTable mapped = t;  // monotone map x -> x^3 + 1 per value
  for (auto& row : mapped.scores)
    for (double& v : row) v = v * v * v + 1.0;
  FriedmanResult a = friedman_statistic(t);
  FriedmanResult b = friedman_statistic(mapped);
  CHECK(a.statistic == doctest::Approx(b.statistic).epsilon(1e-12));
  CHECK(a.mean_ranks == b.mean_ranks);
}

TEST_CASE("chi-square survival function against quadrature") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    int dof = 1 + static_cast<int>(rng() % 10);
    double x = 0.5 + static_cast<double>(rng() % 200) / 10.0;
    // integrate the density from x out to a point where the tail is negligible
    double hi = x + 60.0 + 10.0 * dof;
    double want = simpson([&](double u) { return chi2_pdf(u, dof); }, x, hi);
    CAPTURE(dof);
    CAPTURE(x);
    CHECK(chi_square_sf(x, dof) == doctest::Approx(want).epsilon(1e-8));
  }
  CHECK(chi_square_sf(0.0, 3) == doctest::Approx(1.0));
  CHECK(chi_square_sf(-2.0, 3) == doctest::Approx(1.0));
  CHECK_THROWS_AS(chi_square_sf(1.0, 0), std::invalid_argument);
}

TEST_CASE("normal CDF against quadrature") {
  for (double z : {-3.5, -2.0, -0.7, 0.0, 0.3, 1.1, 2.4, 4.0}) {
    double want = 0.5 + (z >= 0 ? simpson(normal_pdf, 0.0, z) : -simpson(normal_pdf, z, 0.0));
    CHECK(normal_cdf(z) == doctest::Approx(want).epsilon(1e-10));
  }
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
}

TEST_CASE("aligned-rank pairwise test by hand") {
  // instance means: (2, 20); aligned values (-1,0,1, -10,10,0)
  // joint ranks: -10 -> 1, -1 -> 2, {0,0} -> 3.5, 1 -> 5, 10 -> 6
  // mean aligned ranks: m1 (2+1)/2 = 1.5, m2 (3.5+6)/2 = 4.75, m3 (5+3.5)/2 = 4.25
  ComparisonTable t;
  t.methods = {"m1", "m2", "m3"};
  t.instances = {"a", "b"};
  t.scores = {{1, 2, 3}, {10, 30, 20}};
  PairwiseResult res = aligned_rank_pairwise(t, 0, 1);
  CHECK(res.control_mean_rank == doctest::Approx(1.5));
  CHECK(res.comparison_mean_rank == doctest::Approx(4.75));
  const double denom = std::sqrt(3.0 * 3.0 / 6.0);
  CHECK(res.z == doctest::Approx(-3.25 / denom).epsilon(1e-12));
  CHECK(res.p_value == doctest::Approx(2.0 * (1.0 - normal_cdf(3.25 / denom))).epsilon(1e-12));

  // one-sided halves the p-value; swapping arguments flips the sign
  PairwiseResult one = aligned_rank_pairwise(t, 0, 1, 1);
  CHECK(one.p_value == doctest::Approx(res.p_value / 2.0));
  PairwiseResult rev = aligned_rank_pairwise(t, 1, 0);
  CHECK(rev.z == doctest::Approx(-res.z));

  CHECK_THROWS_AS(aligned_rank_pairwise(t, 0, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(aligned_rank_pairwise(t, 0, 7), std::invalid_argument);
}

TEST_CASE("aligned-rank test on identical methods") {
  ComparisonTable t;
  t.methods = {"m1", "m2"};
  t.instances = {"a", "b", "c"};
  t.scores = {{0.4, 0.4}, {0.1, 0.1}, {0.9, 0.9}};
  PairwiseResult res = aligned_rank_pairwise(t, 0, 1);
  CHECK(res.z == doctest::Approx(0.0));
  CHECK(res.p_value == doctest::Approx(1.0));
}

TEST_CASE("comparison table validation") {
  ComparisonTable t;
  t.methods = {"only"};
  t.instances = {"a", "b"};
  t.scores = {{1}, {2}};
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  t.methods = {"m1", "m2"};
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);  // rows have 1 column
  t.scores = {{1, 2}, {3, 4}};
  CHECK_NOTHROW(t.validate());
}

TEST_CASE("jacobi eigendecomposition on random symmetric matrices") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> unit(-3.0, 3.0);
  for (int t = 0; t < 30; ++t) {
    const int d = 2 + static_cast<int>(rng() % 4);
    std::vector<std::vector<double>> a(static_cast<size_t>(d),
                                       std::vector<double>(static_cast<size_t>(d)));
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          a[static_cast<size_t>(j)][static_cast<size_t>(i)] = unit(rng);
    auto [vals, vecs] = jacobi_eigen(a);
    REQUIRE(vals.size() == static_cast<size_t>(d));
    double trace = 0, val_sum = 0;
    for (int i = 0; i < d; ++i) {
      trace += a[static_cast<size_t>(i)][static_cast<size_t>(i)];
      val_sum += vals[static_cast<size_t>(i)];
    }
    CHECK(trace == doctest::Approx(val_sum).epsilon(1e-9));
    for (int e = 0; e < d; ++e) {
      // A v = lambda v
      for (int i = 0; i < d; ++i) {
        double av = 0;
        for (int j = 0; j < d; ++j)
          av += a[static_cast<size_t>(i)][static_cast<size_t>(j)] * vecs[static_cast<size_t>(e)][static_cast<size_t>(j)];
        CHECK(av == doctest::Approx(vals[static_cast<size_t>(e)] * vecs[static_cast<size_t>(e)][static_cast<size_t>(i)])
                        .epsilon(1e-8));
      }
      // orthonormal rows
      for (int f = 0; f <= e; ++f) {
        double dot = 0;
        for (int j = 0; j < d; ++j)
          dot += vecs[static_cast<size_t>(e)][static_cast<size_t>(j)] * vecs[static_cast<size_t>(f)][static_cast<size_t>(j)];
        CHECK(dot == doctest::Approx(e == f ? 1.0 : 0.0).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("pca: collinear data has one component") {
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 12; ++i) pts.push_back({static_cast<double>(i), 2.0 * i});
  PcaResult res = pca(pts);
  REQUIRE(res.explained_variance_ratio.size() == 2);
  CHECK(res.explained_variance_ratio[0] == doctest::Approx(1.0));
  CHECK(res.explained_variance_ratio[1] == doctest::Approx(0.0));
}

TEST_CASE("pca: symmetric cross splits variance evenly") {
  std::vector<std::vector<double>> pts{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  PcaResult res = pca(pts);
  CHECK(res.explained_variance_ratio[0] == doctest::Approx(0.5));
  CHECK(res.explained_variance_ratio[1] == doctest::Approx(0.5));
}

TEST_CASE("pca: constant columns are dropped, ratios are sorted") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 40; ++i) pts.push_back({unit(rng), 7.0, unit(rng) * 3, 7.0, unit(rng)});
  PcaResult res = pca(pts);
  CHECK(res.kept_columns == std::vector<int>{0, 2, 4});
  REQUIRE(res.explained_variance_ratio.size() == 3);
  double total = 0;
  for (size_t i = 0; i < res.explained_variance_ratio.size(); ++i) {
    if (i > 0) CHECK(res.explained_variance_ratio[i] <= res.explained_variance_ratio[i - 1] + 1e-12);
    total += res.explained_variance_ratio[i];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  // sign convention: each component's largest-magnitude entry is positive
  for (const auto& comp : res.components) {
    double big = 0;
    for (double v : comp)
      if (std::fabs(v) > std::fabs(big)) big = v;
    CHECK(big > 0);
  }
}

TEST_CASE("pca: full projection preserves pairwise distances") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 15; ++i) pts.push_back({unit(rng), unit(rng) * 4, unit(rng) + 2});
  PcaResult res = pca(pts);
  REQUIRE(res.projected.size() == pts.size());

  // standardize by hand the same way pca does (population sd)
  const size_t n = pts.size(), p = pts[0].size();
  std::vector<std::vector<double>> z(n, std::vector<double>(p));
  for (size_t j = 0; j < p; ++j) {
    double mean = 0, var = 0;
    for (size_t i = 0; i < n; ++i) mean += pts[i][j];
    mean /= static_cast<double>(n);
    for (size_t i = 0; i < n; ++i) var += (pts[i][j] - mean) * (pts[i][j] - mean);
    var /= static_cast<double>(n);
    for (size_t i = 0; i < n; ++i) z[i][j] = (pts[i][j] - mean) / std::sqrt(var);
  }
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b) {
      double dz = 0, dp = 0;
      for (size_t j = 0; j < p; ++j) dz += (z[a][j] - z[b][j]) * (z[a][j] - z[b][j]);
      for (size_t j = 0; j < res.projected[a].size(); ++j)
        dp += (res.projected[a][j] - res.projected[b][j]) * (res.projected[a][j] - res.projected[b][j]);
      CHECK(std::sqrt(dp) == doctest::Approx(std::sqrt(dz)).epsilon(1e-8));
    }
}
