#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mipdecomp/decomposition.hpp"

namespace mipdecomp {

// All sampling uses std::mt19937_64: the algorithm is pinned by the C++
// standard, so a fixed seed reproduces the same stream on any platform.
using Rng = std::mt19937_64;

struct GreedyConfig {
  double target_proportion = 0.2;  // Q in (0,1)
  std::uint64_t seed = 1;
  int count = 1;
};

struct NsgaConfig {
  int population_size = 32;  // >= 4 and even
  int generations = 300;
  double crossover_prob = 0.95;
  double mutation_prob_per_gene = 0.01;
  std::uint64_t seed = 1;
  std::vector<double> seeding_proportions = {0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35,
                                             0.40, 0.45, 0.50, 0.55, 0.60, 0.65, 0.70,
                                             0.75, 0.80, 0.85, 0.90, 0.95, 0.99};
};

struct Individual {
  std::vector<char> genome;  // 1 = constraint relaxed
  double relaxed_count = 0;          // objective 1, minimized
  double largest_subproblem_vars = 0;  // objective 2, minimized
  int rank = 0;
  double crowding = 0.0;
};

/// Draws `count` decompositions; constraints are visited in descending
/// nonzero-count order and relaxed with probability
/// p_i = |V_i|/S_V * Q * |C| (clamped to 1) until ceil(Q*|C|) are relaxed.
/// Outputs are partitioned but not post-processed.
std::vector<Decomposition> greedy_sample(const MipInstance& instance, const GreedyConfig& cfg);

/// Single draw from an externally owned RNG stream.
Decomposition greedy_sample_one(const MipInstance& instance, double target_proportion, Rng& rng);

/// Fronts of a two-objective minimization population; front 0 is the
/// nondominated set.
std::vector<std::vector<int>> fast_nondominated_sort(
    const std::vector<std::pair<double, double>>& points);

/// Crowding distances for one front; boundary points get +infinity.
std::vector<double> crowding_distance(const std::vector<std::pair<double, double>>& front);

/// NSGA-II over relaxation bit vectors, minimizing (relaxed count, largest
/// subproblem). Returns the final Pareto front, post-processed through the
/// redundancy rules and deduplicated.
std::vector<Decomposition> evolve(const MipInstance& instance, const NsgaConfig& cfg);

}  // namespace mipdecomp
