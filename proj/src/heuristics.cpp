#include "mipdecomp/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mipdecomp {

double rba(const DecompositionStats& s) {
  if (s.m <= 0 || s.n <= 0) throw std::invalid_argument("rba needs m, n > 0");
  const double ml = s.m_l, nl = s.n_l, m = s.m, n = s.n;
  return (ml * n + m * nl - ml * nl) / (m * n);
}

double goodness(const DecompositionStats& s, const GoodnessParams& params) {
  if (s.m <= 0) throw std::invalid_argument("goodness needs m > 0");
  double q = 0.0;
  if (s.block_nonzero_total > 0) {
    const double total = static_cast<double>(s.block_nonzero_total);
    for (std::int64_t nz : s.block_nonzeros) {
      const double frac = static_cast<double>(nz) / total;
      q += frac * (1.0 - frac);
    }
  }
  const double p = std::exp(-params.decay * static_cast<double>(s.m_l) / static_cast<double>(s.m));
  return q * p;
}

double gcg_os(const DecompositionStats& s) {
  if (s.m <= 0) throw std::invalid_argument("gcg_os needs m > 0");
  double min_density = 1.0;
  if (!s.block_densities.empty())
    min_density = *std::min_element(s.block_densities.begin(), s.block_densities.end());
  return 0.6 * static_cast<double>(s.m_l) / static_cast<double>(s.m) + 0.01 +
         0.2 * (1.0 - min_density);
}

double max_white(const DecompositionStats& s) {
  const double area = static_cast<double>(s.n) * static_cast<double>(s.m);
  if (area <= 0) throw std::invalid_argument("max_white needs n*m > 0");
  return 1.0 - (static_cast<double>(s.block_area_total) + static_cast<double>(s.border_area)) / area;
}

std::vector<HeuristicScores> score_all(const MipInstance& instance,
                                       const std::vector<Decomposition>& decomps,
                                       const GoodnessParams& params) {
  std::vector<HeuristicScores> out;
  out.reserve(decomps.size());
  for (const auto& d : decomps) {
    DecompositionStats s = compute_stats(instance, d);
    HeuristicScores h;
    h.key = canonical_key(d);
    h.rba = rba(s);
    h.goodness = goodness(s, params);
    h.gcg_os = gcg_os(s);
    h.max_white = max_white(s);
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<int> heuristic_ranking(const std::vector<HeuristicScores>& scores,
                                   const std::string& heuristic) {
  // rba and gcg_os are minimized, goodness and max_white maximized.
  double dir;
  double HeuristicScores::*field;
  if (heuristic == "rba") { field = &HeuristicScores::rba; dir = 1.0; }
  else if (heuristic == "goodness") { field = &HeuristicScores::goodness; dir = -1.0; }
  else if (heuristic == "gcg_os") { field = &HeuristicScores::gcg_os; dir = 1.0; }
  else if (heuristic == "max_white") { field = &HeuristicScores::max_white; dir = -1.0; }
  else throw std::invalid_argument("unknown heuristic: " + heuristic);

  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    double va = dir * (scores[static_cast<size_t>(a)].*field);
    double vb = dir * (scores[static_cast<size_t>(b)].*field);
    if (va != vb) return va < vb;
    return scores[static_cast<size_t>(a)].key < scores[static_cast<size_t>(b)].key;
  });
  return order;
}

}  // namespace mipdecomp
