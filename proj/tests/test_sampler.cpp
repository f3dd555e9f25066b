#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "mipdecomp/sampler.hpp"
#include "mipdecomp/synthetic.hpp"
#include "test_util.hpp"

using namespace mipdecomp;

namespace {

// Instance with controlled row sizes, binary vars, x=0 feasible.
MipInstance sized_rows(const std::vector<int>& row_sizes, int n) {
  MipInstance inst;
  inst.sense = ObjectiveSense::Maximize;
  for (int j = 0; j < n; ++j) {
    inst.variables.push_back({"x" + std::to_string(j), VarKind::Binary, 0, 1});
    inst.objective.push_back(1.0);
  }
  for (size_t i = 0; i < row_sizes.size(); ++i) {
    Constraint c;
    c.name = "c" + std::to_string(i);
    for (int k = 0; k < row_sizes[i]; ++k) c.entries.push_back({(static_cast<int>(i) + k) % n, 1.0});
    std::sort(c.entries.begin(), c.entries.end(),
              [](const RowEntry& a, const RowEntry& b) { return a.column < b.column; });
    c.relation = Relation::LessEqual;
    c.rhs = static_cast<double>(row_sizes[i]);
    inst.constraints.push_back(std::move(c));
  }
  inst.validate();
  return inst;
}

std::vector<std::vector<int>> brute_force_fronts(const std::vector<std::pair<double, double>>& pts) {
  auto dominates = [](const std::pair<double, double>& a, const std::pair<double, double>& b) {
    return a.first <= b.first && a.second <= b.second &&
           (a.first < b.first || a.second < b.second);
  };
  std::vector<std::vector<int>> fronts;
  std::vector<char> assigned(pts.size(), 0);
  size_t left = pts.size();
  while (left > 0) {
    std::vector<int> front;
    for (size_t i = 0; i < pts.size(); ++i) {
      if (assigned[i]) continue;
      bool dominated = false;
      for (size_t j = 0; j < pts.size(); ++j)
        if (!assigned[j] && j != i && dominates(pts[j], pts[i])) {
          dominated = true;
          break;
        }
      if (!dominated) front.push_back(static_cast<int>(i));
    }
    for (int i : front) assigned[static_cast<size_t>(i)] = 1;
    left -= front.size();
    fronts.push_back(std::move(front));
  }
  return fronts;
}

}  // namespace

TEST_CASE("greedy sampler: proportion too small to pick anything") {
  MipInstance inst = sized_rows({2, 2, 2}, 4);
  Rng rng(1);
  CHECK_THROWS_AS(greedy_sample_one(inst, 0.1, rng), std::invalid_argument);  // Q*|C| < 1
}

TEST_CASE("greedy sampler: saturation relaxes every constraint") {
  MipInstance inst = sized_rows({2, 2, 2, 2}, 5);
  Rng rng(2);
  Decomposition d = greedy_sample_one(inst, 0.99, rng);  // ceil(3.96) = 4
  CHECK(d.relaxed.size() == 4);
}

TEST_CASE("greedy sampler: draw count and clamped probabilities") {
  // p_0 = (9/18) * 0.2 * 10 = 1: the giant row is always taken
  MipInstance inst = sized_rows({9, 1, 1, 1, 1, 1, 1, 1, 1, 1}, 10);
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    Decomposition d = greedy_sample_one(inst, 0.2, rng);
    CHECK(d.relaxed.size() == 2);  // ceil(0.2 * 10)
    CHECK(std::find(d.relaxed.begin(), d.relaxed.end(), 0) != d.relaxed.end());
  }
}

TEST_CASE("greedy sampler: relaxation frequency is monotone in row size") {
  MipInstance inst = sized_rows({8, 6, 4, 2}, 12);
  Rng rng(4);
  std::map<int, int> hits;
  const int draws = 4000;
  for (int t = 0; t < draws; ++t) {
    Decomposition d = greedy_sample_one(inst, 0.5, rng);
    for (int r : d.relaxed) ++hits[r];
  }
  CHECK(hits[0] >= hits[1]);
  CHECK(hits[1] >= hits[2]);
  CHECK(hits[2] >= hits[3]);
}

TEST_CASE("greedy_sample emits `count` partitioned decompositions") {
  MipInstance inst = sized_rows({3, 3, 3, 3, 3}, 8);
  GreedyConfig cfg;
  cfg.target_proportion = 0.4;
  cfg.count = 7;
  cfg.seed = 11;
  std::vector<Decomposition> out = greedy_sample(inst, cfg);
  REQUIRE(out.size() == 7);
  for (const Decomposition& d : out) validate_decomposition(inst, d);
}

TEST_CASE("nondominated sorting") {
  std::vector<std::pair<double, double>> pts{{1, 5}, {2, 2}, {5, 1}, {3, 3}};
  std::vector<std::vector<int>> fronts = fast_nondominated_sort(pts);
  REQUIRE(fronts.size() == 2);
  CHECK(std::set<int>(fronts[0].begin(), fronts[0].end()) == std::set<int>{0, 1, 2});
  CHECK(fronts[1] == std::vector<int>{3});

  std::vector<std::pair<double, double>> same{{2, 2}, {2, 2}, {2, 2}};
  CHECK(fast_nondominated_sort(same)[0].size() == 3);
}

TEST_CASE("nondominated sorting matches brute force on random populations") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::pair<double, double>> pts;
    int n = 1 + static_cast<int>(rng() % 50);
    for (int i = 0; i < n; ++i)
      pts.emplace_back(static_cast<double>(rng() % 12), static_cast<double>(rng() % 12));
    std::vector<std::vector<int>> got = fast_nondominated_sort(pts);
    std::vector<std::vector<int>> want = brute_force_fronts(pts);
    REQUIRE(got.size() == want.size());
    for (size_t f = 0; f < got.size(); ++f) {
      CAPTURE(t);
      CHECK(std::set<int>(got[f].begin(), got[f].end()) ==
            std::set<int>(want[f].begin(), want[f].end()));
    }
  }
}

TEST_CASE("crowding distance") {
  std::vector<double> two = crowding_distance({{1, 2}, {2, 1}});
  CHECK(std::isinf(two[0]));
  CHECK(std::isinf(two[1]));

  std::vector<double> three = crowding_distance({{0, 4}, {1, 2}, {2, 0}});
  CHECK(std::isinf(three[0]));
  CHECK(std::isinf(three[2]));
  CHECK(three[1] == doctest::Approx(2.0));  // both objectives contribute 1

  // flat objective contributes nothing
  std::vector<double> flat = crowding_distance({{0, 7}, {1, 7}, {2, 7}});
  CHECK(flat[1] == doctest::Approx(1.0));
}

TEST_CASE("evolve: planted bridge ends up in the front") {
  SyntheticConfig cfg;
  cfg.num_blocks = 2;
  cfg.vars_per_block = 12;
  cfg.constraints_per_block = 5;
  cfg.bridging_constraints = 1;
  cfg.seed = 42;
  MipInstance inst = generate_block_instance(cfg);
  const int bridge = planted_border_start(cfg);

  NsgaConfig nsga;
  nsga.population_size = 16;
  nsga.generations = 40;
  nsga.seed = 9;
  std::vector<Decomposition> front = evolve(inst, nsga);
  bool found = false;
  for (const Decomposition& d : front) {
    validate_decomposition(inst, d);
    if (d.relaxed == std::vector<int>{bridge}) found = true;
  }
  CHECK(found);
}

TEST_CASE("evolve: determinism and dedup") {
  SyntheticConfig cfg;
  cfg.num_blocks = 2;
  cfg.vars_per_block = 8;
  cfg.constraints_per_block = 4;
  cfg.bridging_constraints = 1;
  cfg.seed = 7;
  MipInstance inst = generate_block_instance(cfg);
  NsgaConfig nsga;
  nsga.population_size = 12;
  nsga.generations = 15;
  nsga.seed = 1234;
  std::vector<Decomposition> a = evolve(inst, nsga);
  std::vector<Decomposition> b = evolve(inst, nsga);
  REQUIRE(a.size() == b.size());
  std::set<std::string> keys;
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].relaxed == b[i].relaxed);
    keys.insert(canonical_key(a[i]));
  }
  CHECK(keys.size() == a.size());  // no duplicates
}

TEST_CASE("evolve: returned set is mutually nondominated") {
  SyntheticConfig cfg;
  cfg.num_blocks = 3;
  cfg.vars_per_block = 6;
  cfg.constraints_per_block = 3;
  cfg.bridging_constraints = 2;
  cfg.seed = 3;
  MipInstance inst = generate_block_instance(cfg);
  NsgaConfig nsga;
  nsga.population_size = 12;
  nsga.generations = 20;
  nsga.seed = 5;
  std::vector<Decomposition> front = evolve(inst, nsga);
  std::vector<std::pair<double, double>> pts;
  for (const Decomposition& d : front) {
    int largest = 0;
    for (const Subproblem& s : d.subproblems)
      largest = std::max(largest, static_cast<int>(s.variables.size()));
    pts.emplace_back(static_cast<double>(d.relaxed.size()), static_cast<double>(largest));
  }
  CHECK(fast_nondominated_sort(pts).size() == 1);
}
