#pragma once

#include <string>
#include <vector>

#include "mipdecomp/decomposition.hpp"
#include "mipdecomp/mip_solver.hpp"

namespace mipdecomp {

struct EvalBudget {
  double total_cpu_seconds = 10.0;
  double subproblem_gap = 0.01;
  double root_grace_seconds = 60.0;
  std::int64_t node_limit = 1'000'000;
};

enum class SubproblemOutcome { BoundShortcut, Optimal, GapReached, TimedOut, LpFallback, Unbounded, Infeasible };

std::string to_string(SubproblemOutcome s);

struct EvaluationResult {
  bool ok = false;
  std::string failure;          // set when !ok (LP infeasible, unbounded subproblem)
  double lr_bound = 0.0;        // LR(lambda*)
  double lp_bound = 0.0;        // z_LP
  double best_primal = 0.0;     // reference incumbent for the gap
  bool has_best_primal = false;
  double solve_time_seconds = 0.0;
  double gap_pct = 0.0;
  bool gap_degenerate = false;
  std::vector<SubproblemOutcome> subproblem_statuses;
  // Filled later by the labeling pass.
  double normalized_gap = 0.0;
  double normalized_time = 0.0;
  double score = 0.0;
};

struct LagrangianSubproblems {
  std::vector<MipInstance> subproblems;  // one per decomposition block
  double constant = 0.0;                 // lambda' b over relaxed rows
};

/// Splits the instance along the decomposition: each block keeps its own
/// constraints and variables, objective becomes the restriction of
/// c - A'lambda over the relaxed rows; the lambda'b part goes into the
/// constant. Throws when a multiplier violates the sign rule for its row
/// (that would break bound validity).
LagrangianSubproblems build_lagrangian_subproblems(const MipInstance& instance,
                                                   const Decomposition& decomp,
                                                   const std::vector<double>& multipliers);

/// t_i = (v_i^2 / sum v_j^2) * cpu for all but the largest subproblem, which
/// absorbs the remainder; inputs must be sorted ascending by variable count.
std::vector<double> allocate_budgets(const std::vector<int>& subproblem_var_counts,
                                     double total_cpu_seconds);

/// |((ub - lb)/ub)| * 100 with the denominator guarded away from zero.
double optimality_gap(double ub, double lb);

/// Full single-shot evaluation: LP relaxation for duals, per-block budgeted
/// MIP solves (single-variable blocks resolved from bounds at zero cost),
/// LR bound, gap against `best_primal`.
EvaluationResult evaluate(const MipInstance& instance, const Decomposition& decomp,
                          const EvalBudget& budget, double best_primal,
                          bool has_best_primal = true);

/// Budgeted incumbent for the original instance, used as the gap reference.
double reference_primal(const MipInstance& instance, const EvalBudget& budget, bool& found);

}  // namespace mipdecomp
