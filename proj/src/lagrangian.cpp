#include "mipdecomp/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mipdecomp {

std::string to_string(SubproblemOutcome s) {
  switch (s) {
    case SubproblemOutcome::BoundShortcut: return "bound-shortcut";
    case SubproblemOutcome::Optimal: return "optimal";
    case SubproblemOutcome::GapReached: return "gap-reached";
    case SubproblemOutcome::TimedOut: return "timed-out";
    case SubproblemOutcome::LpFallback: return "lp-fallback";
    case SubproblemOutcome::Unbounded: return "unbounded";
    case SubproblemOutcome::Infeasible: return "infeasible";
  }
  return "unknown";
}

LagrangianSubproblems build_lagrangian_subproblems(const MipInstance& instance,
                                                   const Decomposition& decomp,
                                                   const std::vector<double>& multipliers) {
  const bool maximize = instance.sense == ObjectiveSense::Maximize;
  constexpr double sign_tol = 1e-9;
  for (int r : decomp.relaxed) {
    double lam = multipliers[static_cast<size_t>(r)];
    Relation rel = instance.constraints[static_cast<size_t>(r)].relation;
    bool ok = true;
    if (rel == Relation::LessEqual) ok = maximize ? lam >= -sign_tol : lam <= sign_tol;
    else if (rel == Relation::GreaterEqual) ok = maximize ? lam <= sign_tol : lam >= -sign_tol;
    if (!ok)
      throw std::invalid_argument("multiplier sign violates bound validity on row " +
                                  std::to_string(r));
  }

  // Reduced objective c - A'lambda over relaxed rows only.
  std::vector<double> reduced = instance.objective;
  double constant = 0.0;
  for (int r : decomp.relaxed) {
    double lam = multipliers[static_cast<size_t>(r)];
    const Constraint& c = instance.constraints[static_cast<size_t>(r)];
    constant += lam * c.rhs;
    if (lam == 0.0) continue;
    for (const auto& e : c.entries) reduced[static_cast<size_t>(e.column)] -= lam * e.value;
  }

  LagrangianSubproblems out;
  out.constant = constant;
  out.subproblems.reserve(decomp.subproblems.size());
  int block = 0;
  for (const auto& sp : decomp.subproblems) {
    MipInstance sub;
    sub.name = instance.name + "#" + std::to_string(block++);
    sub.sense = instance.sense;
    std::vector<int> col_map(instance.variables.size(), -1);
    for (size_t k = 0; k < sp.variables.size(); ++k) {
      int v = sp.variables[k];
      col_map[static_cast<size_t>(v)] = static_cast<int>(k);
      sub.variables.push_back(instance.variables[static_cast<size_t>(v)]);
      sub.objective.push_back(reduced[static_cast<size_t>(v)]);
    }
    for (int ci : sp.constraints) {
      Constraint c = instance.constraints[static_cast<size_t>(ci)];
      for (auto& e : c.entries) e.column = col_map[static_cast<size_t>(e.column)];
      sub.constraints.push_back(std::move(c));
    }
    sub.validate();
    out.subproblems.push_back(std::move(sub));
  }
  return out;
}

std::vector<double> allocate_budgets(const std::vector<int>& var_counts, double total_cpu) {
  if (total_cpu <= 0) throw std::invalid_argument("cpu budget must be positive");
  if (!std::is_sorted(var_counts.begin(), var_counts.end()))
    throw std::invalid_argument("subproblem sizes must be sorted ascending");
  const size_t k = var_counts.size();
  std::vector<double> t(k, 0.0);
  if (k == 0) return t;
  double sum_sq = 0.0;
  for (int v : var_counts) sum_sq += static_cast<double>(v) * static_cast<double>(v);
  if (sum_sq == 0.0) {
    t.back() = total_cpu;
    return t;
  }
  double used = 0.0;
  for (size_t i = 0; i + 1 < k; ++i) {
    double vi = static_cast<double>(var_counts[i]);
    t[i] = vi * vi / sum_sq * total_cpu;
    used += t[i];
  }
  t[k - 1] = total_cpu - used;  // largest block absorbs the remainder
  return t;
}

double optimality_gap(double ub, double lb) {
  const double denom = std::max(std::fabs(ub), 1e-10);
  return std::fabs((ub - lb) / denom) * 100.0;
}

namespace {

// Optimum of coeff*x over a constraint-free variable's domain. Returns false
// when the problem is unbounded in the optimizing direction.
bool single_var_optimum(const Variable& v, double coeff, bool maximize, double& contribution) {
  double lo = v.lower, hi = v.upper;
  if (v.kind != VarKind::Continuous) {
    lo = std::isfinite(lo) ? std::ceil(lo - 1e-9) : lo;
    hi = std::isfinite(hi) ? std::floor(hi + 1e-9) : hi;
  }
  double want = maximize == (coeff > 0) ? hi : lo;  // direction the objective pulls
  if (coeff == 0.0) {
    contribution = 0.0;
    return true;
  }
  if (!std::isfinite(want)) return false;
  contribution = coeff * want;
  return true;
}

}  // namespace

EvaluationResult evaluate(const MipInstance& instance, const Decomposition& decomp,
                          const EvalBudget& budget, double best_primal, bool has_best_primal) {
  EvaluationResult res;
  const double t0 = cpu_seconds();
  const bool maximize = instance.sense == ObjectiveSense::Maximize;

  LpSolution lp = solve_lp(instance);
  if (lp.status != LpStatus::Optimal) {
    res.failure = lp.status == LpStatus::Infeasible ? "lp-infeasible" : "lp-unbounded";
    res.solve_time_seconds = cpu_seconds() - t0;
    return res;
  }
  res.lp_bound = lp.objective;

  LagrangianSubproblems subs = build_lagrangian_subproblems(instance, decomp, lp.duals);

  res.subproblem_statuses.assign(subs.subproblems.size(), SubproblemOutcome::Optimal);
  double block_total = 0.0;
  bool invalid = false;

  // Shortcut blocks: a single unconstrained variable is fixed at its best
  // bound; constrained blocks go through branch and bound.
  std::vector<int> mip_blocks;
  for (size_t i = 0; i < subs.subproblems.size(); ++i) {
    const MipInstance& sub = subs.subproblems[i];
    if (sub.num_vars() == 1 && sub.num_constraints() == 0) {
      double contribution = 0.0;
      if (!single_var_optimum(sub.variables[0], sub.objective[0], maximize, contribution)) {
        res.subproblem_statuses[i] = SubproblemOutcome::Unbounded;
        invalid = true;
        continue;
      }
      res.subproblem_statuses[i] = SubproblemOutcome::BoundShortcut;
      block_total += contribution;
    } else if (sub.num_vars() == 0) {
      // Pure-constraint blocks (empty rows) contribute nothing; an
      // unsatisfiable empty row makes the whole instance infeasible.
      res.subproblem_statuses[i] = SubproblemOutcome::BoundShortcut;
    } else {
      mip_blocks.push_back(static_cast<int>(i));
    }
  }

  std::sort(mip_blocks.begin(), mip_blocks.end(), [&](int a, int b) {
    int va = subs.subproblems[static_cast<size_t>(a)].num_vars();
    int vb = subs.subproblems[static_cast<size_t>(b)].num_vars();
    return va != vb ? va < vb : a < b;
  });
  std::vector<int> sizes;
  sizes.reserve(mip_blocks.size());
  for (int i : mip_blocks) sizes.push_back(subs.subproblems[static_cast<size_t>(i)].num_vars());
  std::vector<double> budgets =
      mip_blocks.empty() ? std::vector<double>{} : allocate_budgets(sizes, budget.total_cpu_seconds);

  for (size_t k = 0; k < mip_blocks.size(); ++k) {
    int i = mip_blocks[k];
    MipOptions opts;
    opts.time_budget_seconds = budgets[k];
    opts.rel_gap = budget.subproblem_gap;
    opts.node_limit = budget.node_limit;
    opts.root_grace_seconds = budget.root_grace_seconds;
    MipResult r = solve_mip(subs.subproblems[static_cast<size_t>(i)], opts);
    switch (r.status) {
      case MipStatus::Optimal:
        res.subproblem_statuses[static_cast<size_t>(i)] =
            budget.subproblem_gap > 0 ? SubproblemOutcome::GapReached : SubproblemOutcome::Optimal;
        break;
      case MipStatus::Feasible:
      case MipStatus::BoundOnly:
        res.subproblem_statuses[static_cast<size_t>(i)] = SubproblemOutcome::TimedOut;
        break;
      case MipStatus::LpFallback:
        res.subproblem_statuses[static_cast<size_t>(i)] = SubproblemOutcome::LpFallback;
        break;
      case MipStatus::Unbounded:
        res.subproblem_statuses[static_cast<size_t>(i)] = SubproblemOutcome::Unbounded;
        invalid = true;
        break;
      case MipStatus::Infeasible:
        res.subproblem_statuses[static_cast<size_t>(i)] = SubproblemOutcome::Infeasible;
        invalid = true;
        break;
    }
    if (std::isfinite(r.dual_bound)) block_total += r.dual_bound;
  }

  res.solve_time_seconds = cpu_seconds() - t0;
  if (invalid) {
    res.failure = "invalid-lr-bound";
    return res;
  }

  res.lr_bound = subs.constant + block_total + instance.objective_constant;
  res.best_primal = best_primal;
  res.has_best_primal = has_best_primal;
  if (has_best_primal) {
    double ub = maximize ? res.lr_bound : best_primal;
    double lb = maximize ? best_primal : res.lr_bound;
    res.gap_pct = optimality_gap(ub, lb);
    res.gap_degenerate = std::fabs(ub) <= 1e-10;
  } else {
    res.gap_pct = 1e12;
    res.gap_degenerate = true;
  }
  res.ok = true;
  return res;
}

double reference_primal(const MipInstance& instance, const EvalBudget& budget, bool& found) {
  MipOptions opts;
  opts.time_budget_seconds = budget.total_cpu_seconds;
  opts.rel_gap = budget.subproblem_gap;
  opts.node_limit = budget.node_limit;
  opts.root_grace_seconds = budget.root_grace_seconds;
  MipResult r = solve_mip(instance, opts);
  found = r.has_incumbent;
  return r.has_incumbent ? r.incumbent : 0.0;
}

}  // namespace mipdecomp
