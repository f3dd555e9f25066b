#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "mipdecomp/decomposition.hpp"
#include "test_util.hpp"

using namespace mipdecomp;

namespace {

// Three constraints over four variables: c0{v0,v1}, c1{v1,v2}, c2{v3}.
MipInstance chain_instance() {
  MipInstance inst;
  inst.objective = {1, 1, 1, 1};
  for (int j = 0; j < 4; ++j)
    inst.variables.push_back({"v" + std::to_string(j), VarKind::Continuous, 0, 1});
  inst.constraints = {{"c0", {{0, 1}, {1, 1}}, Relation::LessEqual, 1},
                      {"c1", {{1, 1}, {2, 1}}, Relation::LessEqual, 1},
                      {"c2", {{3, 1}}, Relation::LessEqual, 1}};
  return inst;
}

// Union-find reference for the expected variable components.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) { return parent[static_cast<size_t>(a)] == a ? a : parent[static_cast<size_t>(a)] = find(parent[static_cast<size_t>(a)]); }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

std::set<std::set<int>> oracle_components(const MipInstance& inst, const std::vector<int>& relaxed) {
  std::set<int> border(relaxed.begin(), relaxed.end());
  UnionFind uf(inst.num_vars());
  for (int i = 0; i < inst.num_constraints(); ++i) {
    if (border.count(i)) continue;
    const auto& e = inst.constraints[static_cast<size_t>(i)].entries;
    for (size_t k = 1; k < e.size(); ++k) uf.unite(e[0].column, e[k].column);
  }
  std::map<int, std::set<int>> groups;
  for (int j = 0; j < inst.num_vars(); ++j) groups[uf.find(j)].insert(j);
  std::set<std::set<int>> out;
  for (auto& [root, vars] : groups) out.insert(vars);
  return out;
}

std::set<std::set<int>> var_sets(const Decomposition& d) {
  std::set<std::set<int>> out;
  for (const Subproblem& s : d.subproblems) out.insert({s.variables.begin(), s.variables.end()});
  return out;
}

}  // namespace

TEST_CASE("partition: relaxing the middle of a chain") {
  MipInstance inst = chain_instance();
  Decomposition d = partition(inst, {1});
  validate_decomposition(inst, d);
  CHECK(d.relaxed == std::vector<int>{1});
  CHECK(var_sets(d) == std::set<std::set<int>>{{0, 1}, {2}, {3}});
  // v2 lost its only constraint
  int empty_blocks = 0;
  for (const Subproblem& s : d.subproblems)
    if (s.constraints.empty()) ++empty_blocks;
  CHECK(empty_blocks == 1);
}

TEST_CASE("partition: empty relaxation of a connected matrix") {
  MipInstance inst = chain_instance();
  inst.constraints.push_back({"c3", {{2, 1}, {3, 1}}, Relation::LessEqual, 1});
  Decomposition d = partition(inst, {});
  CHECK(d.subproblems.size() == 1);
  CHECK(d.subproblems[0].variables.size() == 4);
  CHECK(d.subproblems[0].constraints.size() == 4);
}

TEST_CASE("partition: bad index throws, input order does not matter") {
  MipInstance inst = chain_instance();
  CHECK_THROWS_AS(partition(inst, {7}), std::invalid_argument);
  Decomposition a = partition(inst, {2, 0});
  CHECK(a.relaxed == std::vector<int>{0, 2});
}

TEST_CASE("partition matches the union-find oracle on random cases") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    testutil::RandomInstanceOptions opt;
    opt.max_vars = 12;
    opt.max_constraints = 12;
    MipInstance inst = testutil::random_instance(rng, opt);
    std::vector<int> relaxed;
    for (int i = 0; i < inst.num_constraints(); ++i)
      if (rng() % 3 == 0) relaxed.push_back(i);
    Decomposition d = partition(inst, relaxed);
    validate_decomposition(inst, d);
    CAPTURE(t);
    CHECK(var_sets(d) == oracle_components(inst, relaxed));
  }
}

TEST_CASE("redundancy rule 1: subset of one block") {
  MipInstance inst = chain_instance();
  inst.constraints.push_back({"c3", {{0, 1}}, Relation::LessEqual, 1});  // inside {v0,v1}
  Decomposition d = partition(inst, {3});
  Decomposition r = remove_redundant_constraints(inst, d);
  CHECK(r.relaxed.empty());
}

TEST_CASE("redundancy rule 2: all variables in single-variable blocks") {
  MipInstance inst = chain_instance();
  // relax everything touching v3 plus c1 so v2 and v3 are singletons
  Decomposition d = partition(inst, {1, 2});
  // c1 spans {v1,v2}: v2 is a singleton but v1 is not -> c1 stays relaxed;
  // c2 spans {v3} only -> rule 2 reinstates it.
  Decomposition r = remove_redundant_constraints(inst, d);
  CHECK(r.relaxed == std::vector<int>{1});
}

TEST_CASE("redundancy fixpoint leaves no rule violations") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    testutil::RandomInstanceOptions opt;
    opt.max_vars = 10;
    opt.max_constraints = 10;
    MipInstance inst = testutil::random_instance(rng, opt);
    std::vector<int> relaxed;
    for (int i = 0; i < inst.num_constraints(); ++i)
      if (rng() % 2 == 0) relaxed.push_back(i);
    Decomposition before = partition(inst, relaxed);
    Decomposition after = remove_redundant_constraints(inst, before);
    validate_decomposition(inst, after);
    CHECK(after.relaxed.size() <= before.relaxed.size());

    // direct scan: neither rule may still apply
    std::set<int> singles;
    for (const Subproblem& s : after.subproblems)
      if (s.variables.size() == 1) singles.insert(s.variables[0]);
    for (int ci : after.relaxed) {
      const auto& entries = inst.constraints[static_cast<size_t>(ci)].entries;
      bool all_single = true;
      for (const RowEntry& e : entries) all_single = all_single && singles.count(e.column);
      CHECK_FALSE(all_single);
      for (const Subproblem& s : after.subproblems) {
        std::set<int> vars(s.variables.begin(), s.variables.end());
        bool subset = true;
        for (const RowEntry& e : entries) subset = subset && vars.count(e.column);
        CHECK_FALSE(subset);
      }
    }

    // idempotent
    Decomposition again = remove_redundant_constraints(inst, after);
    CHECK(again.relaxed == after.relaxed);
  }
}

TEST_CASE("canonical keys and dedup") {
  Decomposition a, b, c;
  a.instance_id = b.instance_id = c.instance_id = "inst";
  a.relaxed = {1, 3};
  b.relaxed = {1, 3};
  c.relaxed = {1};
  CHECK(canonical_key(a) == canonical_key(b));
  CHECK(canonical_key(a) != canonical_key(c));

  // dedup over random relaxation draws equals a set-of-sets count
  std::mt19937_64 rng(3);
  MipInstance inst = chain_instance();
  std::set<std::string> keys;
  std::set<std::set<int>> sets;
  for (int t = 0; t < 200; ++t) {
    std::vector<int> relaxed;
    for (int i = 0; i < inst.num_constraints(); ++i)
      if (rng() % 2) relaxed.push_back(i);
    Decomposition d = partition(inst, relaxed);
    keys.insert(canonical_key(d));
    sets.insert(std::set<int>(relaxed.begin(), relaxed.end()));
  }
  CHECK(keys.size() == sets.size());
}

TEST_CASE("compute_stats basics") {
  MipInstance inst = chain_instance();
  Decomposition whole = partition(inst, {});
  DecompositionStats s0 = compute_stats(inst, whole);
  CHECK(s0.m_l == 0);
  CHECK(s0.n_l == 0);
  CHECK(s0.K == 2);  // {v0,v1,v2} chain and {v3}
  CHECK(s0.block_nonzero_total == inst.nonzeros());

  Decomposition d = partition(inst, {1});
  DecompositionStats s = compute_stats(inst, d);
  CHECK(s.K == 3);
  CHECK(s.m_l == 1);
  CHECK(s.single_var_subproblems == 2);  // {v2} and {v3}
  CHECK(s.border_nz == 2);
  CHECK(s.border_area == 2 * 1);  // two border vars, one border row
}

TEST_CASE("stats conserve nonzeros on random cases") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 50; ++t) {
    MipInstance inst = testutil::random_instance(rng);
    std::vector<int> relaxed;
    for (int i = 0; i < inst.num_constraints(); ++i)
      if (rng() % 3 == 0) relaxed.push_back(i);
    DecompositionStats s = compute_stats(inst, partition(inst, relaxed));
    CHECK(s.block_nonzero_total + s.border_nz == inst.nonzeros());
    CHECK(s.block_area_total + s.border_area <= static_cast<std::int64_t>(s.n) * s.m);
    for (double d : s.block_densities) {
      CHECK(d > 0.0);
      CHECK(d <= 1.0);
    }
  }
}

TEST_CASE("relaxing a superset never decreases the block count") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 50; ++t) {
    MipInstance inst = testutil::random_instance(rng);
    std::vector<int> base;
    for (int i = 0; i < inst.num_constraints(); ++i)
      if (rng() % 4 == 0) base.push_back(i);
    std::vector<int> more = base;
    for (int i = 0; i < inst.num_constraints(); ++i)
      if (rng() % 4 == 0 && std::find(more.begin(), more.end(), i) == more.end())
        more.push_back(i);
    size_t k1 = partition(inst, base).subproblems.size();
    size_t k2 = partition(inst, more).subproblems.size();
    CHECK(k2 >= k1);
  }
}
