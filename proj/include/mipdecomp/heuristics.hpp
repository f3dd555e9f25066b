#pragma once

#include <string>
#include <vector>

#include "mipdecomp/decomposition.hpp"

namespace mipdecomp {

struct GoodnessParams {
  double decay = 5.0;  // exponential falloff of the border penalty
};

/// Relative border area (m_l*n + m*n_l - m_l*n_l)/(m*n); lower is better.
double rba(const DecompositionStats& stats);

/// Q*P in [0,1]; higher is better. Q spreads block nonzeros, P decays with
/// border size.
double goodness(const DecompositionStats& stats, const GoodnessParams& params = {});

/// 0.6*m_l/M + 0.01 + 0.2*(1 - min block density); lower is better. The min
/// over no blocks is taken as 1.
double gcg_os(const DecompositionStats& stats);

/// 1 - (s + t)/(n*m); higher is better.
double max_white(const DecompositionStats& stats);

struct HeuristicScores {
  std::string key;
  double rba = 0;
  double goodness = 0;
  double gcg_os = 0;
  double max_white = 0;
};

/// All four scores per decomposition, in input order.
std::vector<HeuristicScores> score_all(const MipInstance& instance,
                                       const std::vector<Decomposition>& decomps,
                                       const GoodnessParams& params = {});

/// Indices of `scores` ordered best-first for one heuristic
/// ("rba" | "goodness" | "gcg_os" | "max_white"); ties broken by key.
std::vector<int> heuristic_ranking(const std::vector<HeuristicScores>& scores,
                                   const std::string& heuristic);

}  // namespace mipdecomp
