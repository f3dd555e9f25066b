#include "mipdecomp/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace mipdecomp {

namespace {

// Constraint visit order (descending nonzero count, index tie-break) and the
// per-constraint relaxation probabilities.
struct GreedyPlan {
  std::vector<int> order;
  std::vector<double> prob;  // indexed by constraint
};

GreedyPlan make_plan(const MipInstance& instance, double q) {
  const int m = instance.num_constraints();
  GreedyPlan plan;
  plan.order.resize(static_cast<size_t>(m));
  std::iota(plan.order.begin(), plan.order.end(), 0);
  std::stable_sort(plan.order.begin(), plan.order.end(), [&](int a, int b) {
    return instance.constraints[static_cast<size_t>(a)].entries.size() >
           instance.constraints[static_cast<size_t>(b)].entries.size();
  });
  double sum_v = static_cast<double>(instance.nonzeros());
  plan.prob.resize(static_cast<size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    double vi = static_cast<double>(instance.constraints[static_cast<size_t>(i)].entries.size());
    double p = sum_v > 0 ? vi / sum_v * q * static_cast<double>(m) : 0.0;
    plan.prob[static_cast<size_t>(i)] = std::clamp(p, 0.0, 1.0);
  }
  return plan;
}

}  // namespace

Decomposition greedy_sample_one(const MipInstance& instance, double q, Rng& rng) {
  const int m = instance.num_constraints();
  if (q * m < 1.0) throw std::invalid_argument("target proportion selects no constraints");
  const int target = std::min(m, static_cast<int>(std::ceil(q * m)));
  GreedyPlan plan = make_plan(instance, q);

  std::vector<char> relaxed(static_cast<size_t>(m), 0);
  int count = 0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (count < target) {
    bool progress = false;
    for (int i : plan.order) {
      if (count >= target) break;
      if (relaxed[static_cast<size_t>(i)]) continue;
      if (unit(rng) < plan.prob[static_cast<size_t>(i)]) {
        relaxed[static_cast<size_t>(i)] = 1;
        ++count;
        progress = true;
      }
    }
    if (!progress) {
      // Only zero-probability (empty) constraints remain; take them in order.
      for (int i : plan.order) {
        if (count >= target) break;
        if (!relaxed[static_cast<size_t>(i)] && plan.prob[static_cast<size_t>(i)] <= 0.0) {
          relaxed[static_cast<size_t>(i)] = 1;
          ++count;
        }
      }
      if (count < target) continue;  // some positive-probability rows left; keep looping
    }
  }

  std::vector<int> idx;
  for (int i = 0; i < m; ++i)
    if (relaxed[static_cast<size_t>(i)]) idx.push_back(i);
  return partition(instance, std::move(idx), DecompositionSource::Greedy);
}

std::vector<Decomposition> greedy_sample(const MipInstance& instance, const GreedyConfig& cfg) {
  if (cfg.target_proportion <= 0.0 || cfg.target_proportion >= 1.0)
    throw std::invalid_argument("target proportion must be in (0,1)");
  Rng rng(cfg.seed);
  std::vector<Decomposition> out;
  out.reserve(static_cast<size_t>(cfg.count));
  for (int i = 0; i < cfg.count; ++i)
    out.push_back(greedy_sample_one(instance, cfg.target_proportion, rng));
  return out;
}

std::vector<std::vector<int>> fast_nondominated_sort(
    const std::vector<std::pair<double, double>>& pts) {
  const int n = static_cast<int>(pts.size());
  auto dominates = [&](int a, int b) {
    const auto& [a1, a2] = pts[static_cast<size_t>(a)];
    const auto& [b1, b2] = pts[static_cast<size_t>(b)];
    return a1 <= b1 && a2 <= b2 && (a1 < b1 || a2 < b2);
  };
  std::vector<int> dom_count(static_cast<size_t>(n), 0);
  std::vector<std::vector<int>> dominated(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      if (dominates(a, b)) dominated[static_cast<size_t>(a)].push_back(b);
      else if (dominates(b, a)) ++dom_count[static_cast<size_t>(a)];
    }
  std::vector<std::vector<int>> fronts;
  std::vector<int> current;
  for (int i = 0; i < n; ++i)
    if (dom_count[static_cast<size_t>(i)] == 0) current.push_back(i);
  while (!current.empty()) {
    fronts.push_back(current);
    std::vector<int> next;
    for (int a : current)
      for (int b : dominated[static_cast<size_t>(a)])
        if (--dom_count[static_cast<size_t>(b)] == 0) next.push_back(b);
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(const std::vector<std::pair<double, double>>& front) {
  const int n = static_cast<int>(front.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<size_t>(n), 0.0);
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), inf);
    return dist;
  }
  for (int obj = 0; obj < 2; ++obj) {
    auto get = [&](int i) {
      return obj == 0 ? front[static_cast<size_t>(i)].first : front[static_cast<size_t>(i)].second;
    };
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return get(a) < get(b); });
    double range = get(order.back()) - get(order.front());
    dist[static_cast<size_t>(order.front())] = inf;
    dist[static_cast<size_t>(order.back())] = inf;
    if (range <= 0.0) continue;  // flat objective contributes nothing
    for (int k = 1; k + 1 < n; ++k) {
      int i = order[static_cast<size_t>(k)];
      if (std::isinf(dist[static_cast<size_t>(i)])) continue;
      dist[static_cast<size_t>(i)] += (get(order[static_cast<size_t>(k + 1)]) -
                                       get(order[static_cast<size_t>(k - 1)])) / range;
    }
  }
  return dist;
}

namespace {

void evaluate_individual(const MipInstance& instance, Individual& ind) {
  std::vector<int> relaxed;
  for (size_t i = 0; i < ind.genome.size(); ++i)
    if (ind.genome[i]) relaxed.push_back(static_cast<int>(i));
  ind.relaxed_count = static_cast<double>(relaxed.size());
  Decomposition d = partition(instance, std::move(relaxed), DecompositionSource::Nsga2);
  int largest = 0;
  for (const auto& sp : d.subproblems)
    largest = std::max(largest, static_cast<int>(sp.variables.size()));
  ind.largest_subproblem_vars = static_cast<double>(largest);
}

// Ranks and crowding for the whole population, in place.
void assign_rank_and_crowding(std::vector<Individual>& pop) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(pop.size());
  for (const auto& ind : pop) pts.emplace_back(ind.relaxed_count, ind.largest_subproblem_vars);
  auto fronts = fast_nondominated_sort(pts);
  for (size_t f = 0; f < fronts.size(); ++f) {
    std::vector<std::pair<double, double>> fp;
    fp.reserve(fronts[f].size());
    for (int i : fronts[f]) fp.push_back(pts[static_cast<size_t>(i)]);
    std::vector<double> cd = crowding_distance(fp);
    for (size_t k = 0; k < fronts[f].size(); ++k) {
      pop[static_cast<size_t>(fronts[f][k])].rank = static_cast<int>(f);
      pop[static_cast<size_t>(fronts[f][k])].crowding = cd[k];
    }
  }
}

int tournament(const std::vector<Individual>& pop, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(pop.size()) - 1);
  int a = pick(rng), b = pick(rng);
  const Individual& ia = pop[static_cast<size_t>(a)];
  const Individual& ib = pop[static_cast<size_t>(b)];
  if (ia.rank != ib.rank) return ia.rank < ib.rank ? a : b;
  if (ia.crowding != ib.crowding) return ia.crowding > ib.crowding ? a : b;
  return std::min(a, b);
}

}  // namespace

std::vector<Decomposition> evolve(const MipInstance& instance, const NsgaConfig& cfg) {
  if (cfg.population_size < 4 || cfg.population_size % 2 != 0)
    throw std::invalid_argument("population size must be >= 4 and even");
  if (cfg.crossover_prob < 0 || cfg.crossover_prob > 1 || cfg.mutation_prob_per_gene < 0 ||
      cfg.mutation_prob_per_gene > 1)
    throw std::invalid_argument("probabilities must be in [0,1]");
  if (cfg.seeding_proportions.empty())
    throw std::invalid_argument("need at least one seeding proportion");

  const int m = instance.num_constraints();
  Rng rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Individual> pop;
  pop.reserve(static_cast<size_t>(cfg.population_size));
  for (int i = 0; i < cfg.population_size; ++i) {
    double q = cfg.seeding_proportions[static_cast<size_t>(i) % cfg.seeding_proportions.size()];
    // Tiny instances: lift the proportion so at least one constraint relaxes.
    q = std::max(q, 1.0 / static_cast<double>(m) + 1e-9);
    Decomposition d = greedy_sample_one(instance, q, rng);
    Individual ind;
    ind.genome.assign(static_cast<size_t>(m), 0);
    for (int r : d.relaxed) ind.genome[static_cast<size_t>(r)] = 1;
    evaluate_individual(instance, ind);
    pop.push_back(std::move(ind));
  }
  assign_rank_and_crowding(pop);

  for (int gen = 0; gen < cfg.generations; ++gen) {
    std::vector<Individual> offspring;
    offspring.reserve(pop.size());
    while (offspring.size() < pop.size()) {
      const Individual& p1 = pop[static_cast<size_t>(tournament(pop, rng))];
      const Individual& p2 = pop[static_cast<size_t>(tournament(pop, rng))];
      Individual c1 = p1, c2 = p2;
      if (unit(rng) < cfg.crossover_prob) {
        for (int g = 0; g < m; ++g)
          if (unit(rng) < 0.5) std::swap(c1.genome[static_cast<size_t>(g)], c2.genome[static_cast<size_t>(g)]);
      }
      for (Individual* c : {&c1, &c2})
        for (int g = 0; g < m; ++g)
          if (unit(rng) < cfg.mutation_prob_per_gene)
            c->genome[static_cast<size_t>(g)] ^= 1;
      evaluate_individual(instance, c1);
      evaluate_individual(instance, c2);
      offspring.push_back(std::move(c1));
      if (offspring.size() < pop.size()) offspring.push_back(std::move(c2));
    }

    // (mu + lambda) elitist survival.
    std::vector<Individual> merged = pop;
    for (auto& o : offspring) merged.push_back(std::move(o));
    assign_rank_and_crowding(merged);
    std::vector<int> order(merged.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      const Individual& ia = merged[static_cast<size_t>(a)];
      const Individual& ib = merged[static_cast<size_t>(b)];
      if (ia.rank != ib.rank) return ia.rank < ib.rank;
      return ia.crowding > ib.crowding;
    });
    std::vector<Individual> next;
    next.reserve(pop.size());
    for (size_t k = 0; k < pop.size(); ++k)
      next.push_back(merged[static_cast<size_t>(order[k])]);
    pop = std::move(next);
    assign_rank_and_crowding(pop);
  }

  // Final-generation Pareto front, post-processed and deduplicated.
  std::vector<Decomposition> out;
  std::unordered_set<std::string> seen;
  for (const auto& ind : pop) {
    if (ind.rank != 0) continue;
    std::vector<int> relaxed;
    for (size_t i = 0; i < ind.genome.size(); ++i)
      if (ind.genome[i]) relaxed.push_back(static_cast<int>(i));
    Decomposition d = partition(instance, std::move(relaxed), DecompositionSource::Nsga2);
    d = remove_redundant_constraints(instance, d);
    d.source = DecompositionSource::Nsga2;
    std::string key = canonical_key(d);
    if (seen.insert(key).second) out.push_back(std::move(d));
  }
  return out;
}

}  // namespace mipdecomp
