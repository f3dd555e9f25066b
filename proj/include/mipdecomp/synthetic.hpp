#pragma once

#include <cstdint>
#include <string>

#include "mipdecomp/mip_instance.hpp"

namespace mipdecomp {

/// Recipe for a random bordered block-diagonal instance: `num_blocks`
/// independent knapsack-style blocks plus `bridging_constraints` rows that
/// couple variables across blocks. Relaxing exactly the bridging rows
/// recovers the planted structure.
struct SyntheticConfig {
  std::string name = "synthetic";
  int num_blocks = 4;
  int vars_per_block = 25;
  int constraints_per_block = 10;
  int bridging_constraints = 3;
  int row_nonzeros = 4;       // per block row, capped at vars_per_block
  double binary_fraction = 1.0;  // remainder is continuous in [0, 10]
  std::uint64_t seed = 1;
};

/// Deterministic in (config, seed). Maximization, nonnegative objective,
/// x = 0 always feasible. Block rows come first (block by block), bridging
/// rows last, so the planted border is rows [m - bridging, m).
MipInstance generate_block_instance(const SyntheticConfig& cfg);

/// First row index of the planted border.
int planted_border_start(const SyntheticConfig& cfg);

}  // namespace mipdecomp
