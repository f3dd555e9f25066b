#pragma once

#include <cstdint>
#include <vector>

#include "mipdecomp/lp.hpp"
#include "mipdecomp/mip_instance.hpp"

namespace mipdecomp {

enum class MipStatus { Optimal, Feasible, Infeasible, Unbounded, BoundOnly, LpFallback };

struct MipResult {
  MipStatus status = MipStatus::Optimal;
  double dual_bound = 0.0;    // valid bound in the optimization direction
  double incumbent = 0.0;     // objective of best integer solution, if any
  bool has_incumbent = false;
  std::vector<double> solution;  // incumbent values when has_incumbent
  std::int64_t nodes = 0;
  double time_seconds = 0.0;
};

struct MipOptions {
  double time_budget_seconds = 1e18;
  double rel_gap = 0.0;         // relative optimality gap for early stop
  std::int64_t node_limit = 1'000'000;
  double root_grace_seconds = 60.0;  // extra time to finish the root LP
};

/// Best-bound-first branch and bound over LP relaxations, branching on the
/// most fractional integer variable. Always returns a valid dual bound: the
/// best LP bound over open nodes on timeout, or the plain LP relaxation
/// bound (status LpFallback) if even the root cannot be processed.
MipResult solve_mip(const MipInstance& instance, const MipOptions& options = {});

/// Process CPU seconds, falling back to wall time when unavailable.
double cpu_seconds();

}  // namespace mipdecomp
