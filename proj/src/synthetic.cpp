#include "mipdecomp/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mipdecomp {

int planted_border_start(const SyntheticConfig& cfg) {
  return cfg.num_blocks * cfg.constraints_per_block;
}

MipInstance generate_block_instance(const SyntheticConfig& cfg) {
  if (cfg.num_blocks < 1 || cfg.vars_per_block < 1 || cfg.constraints_per_block < 1)
    throw std::invalid_argument("block instance needs at least one block, var, and row");
  if (cfg.num_blocks < 2 && cfg.bridging_constraints > 0)
    throw std::invalid_argument("bridging rows need at least two blocks");

  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> coef(1, 9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  MipInstance inst;
  inst.name = cfg.name;
  inst.sense = ObjectiveSense::Maximize;
  const int n = cfg.num_blocks * cfg.vars_per_block;
  const int row_nz = std::min(cfg.row_nonzeros, cfg.vars_per_block);

  for (int j = 0; j < n; ++j) {
    Variable v;
    v.name = "x" + std::to_string(j);
    if (unit(rng) < cfg.binary_fraction) {
      v.kind = VarKind::Binary;
      v.lower = 0;
      v.upper = 1;
    } else {
      v.kind = VarKind::Continuous;
      v.lower = 0;
      v.upper = 10;
    }
    inst.variables.push_back(v);
    inst.objective.push_back(static_cast<double>(coef(rng)));
  }

  auto sample_vars = [&](int lo, int hi, int count) {
    std::vector<int> pool(static_cast<size_t>(hi - lo));
    for (int j = lo; j < hi; ++j) pool[static_cast<size_t>(j - lo)] = j;
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(static_cast<size_t>(count));
    std::sort(pool.begin(), pool.end());
    return pool;
  };

  auto add_row = [&](const std::string& name, const std::vector<int>& vars) {
    Constraint c;
    c.name = name;
    double total = 0;
    for (int j : vars) {
      double a = static_cast<double>(coef(rng));
      c.entries.push_back({j, a});
      total += a * inst.variables[static_cast<size_t>(j)].upper;
    }
    c.relation = Relation::LessEqual;
    // Tight enough to bind, loose enough that x = 0 stays feasible.
    c.rhs = std::max(1.0, std::floor(total * (0.3 + 0.4 * unit(rng))));
    inst.constraints.push_back(std::move(c));
  };

  for (int b = 0; b < cfg.num_blocks; ++b) {
    const int lo = b * cfg.vars_per_block, hi = lo + cfg.vars_per_block;
    for (int r = 0; r < cfg.constraints_per_block; ++r)
      add_row("b" + std::to_string(b) + "r" + std::to_string(r), sample_vars(lo, hi, row_nz));
  }

  std::uniform_int_distribution<int> pick_block(0, cfg.num_blocks - 1);
  for (int r = 0; r < cfg.bridging_constraints; ++r) {
    int b1 = pick_block(rng);
    int b2 = pick_block(rng);
    while (b2 == b1) b2 = pick_block(rng);
    int per_side = std::max(1, row_nz / 2);
    std::vector<int> vars = sample_vars(b1 * cfg.vars_per_block, (b1 + 1) * cfg.vars_per_block, per_side);
    std::vector<int> more = sample_vars(b2 * cfg.vars_per_block, (b2 + 1) * cfg.vars_per_block, per_side);
    vars.insert(vars.end(), more.begin(), more.end());
    std::sort(vars.begin(), vars.end());
    add_row("link" + std::to_string(r), vars);
  }

  inst.validate();
  return inst;
}

}  // namespace mipdecomp
