#include "mipdecomp/mip_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

#if defined(__unix__) || defined(__APPLE__)
#include <sys/resource.h>
#endif

namespace mipdecomp {

double cpu_seconds() {
#if defined(RUSAGE_THREAD)
  rusage ru{};
  if (getrusage(RUSAGE_THREAD, &ru) == 0) {
    return static_cast<double>(ru.ru_utime.tv_sec + ru.ru_stime.tv_sec) +
           static_cast<double>(ru.ru_utime.tv_usec + ru.ru_stime.tv_usec) * 1e-6;
  }
#endif
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

namespace {

constexpr double kIntTol = 1e-6;

struct Node {
  std::vector<double> lower, upper;
  double bound_estimate;  // parent LP bound, in max-normalized form
  int depth = 0;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    return a.bound_estimate < b.bound_estimate;  // best (largest) bound first
  }
};

}  // namespace

MipResult solve_mip(const MipInstance& instance, const MipOptions& options) {
  const double t0 = cpu_seconds();
  const double sign = instance.sense == ObjectiveSense::Maximize ? 1.0 : -1.0;
  const int n = instance.num_vars();

  MipResult res;
  auto elapsed = [&] { return cpu_seconds() - t0; };

  // Root LP, with the grace window if the budget alone is not enough.
  MipInstance work = instance;
  LpSolution root = solve_lp(work);
  const double root_time = elapsed();

  if (root.status == LpStatus::Infeasible) {
    res.status = MipStatus::Infeasible;
    res.dual_bound = -sign * kInf;
    res.time_seconds = elapsed();
    return res;
  }
  if (root.status == LpStatus::Unbounded) {
    res.status = MipStatus::Unbounded;
    res.dual_bound = sign * kInf;
    res.time_seconds = elapsed();
    return res;
  }
  if (root_time > options.time_budget_seconds + options.root_grace_seconds) {
    res.status = MipStatus::LpFallback;
    res.dual_bound = root.objective;
    res.time_seconds = root_time;
    return res;
  }

  auto fractional_var = [&](const std::vector<double>& x) {
    int best = -1;
    double best_frac = kIntTol;
    for (int j = 0; j < n; ++j) {
      if (!instance.is_integer_kind(j)) continue;
      double f = x[static_cast<size_t>(j)] - std::floor(x[static_cast<size_t>(j)]);
      double dist = std::min(f, 1.0 - f);
      if (dist > best_frac) {
        best_frac = dist;
        best = j;
      }
    }
    return best;
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  Node root_node;
  root_node.lower.resize(static_cast<size_t>(n));
  root_node.upper.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    root_node.lower[static_cast<size_t>(j)] = instance.variables[static_cast<size_t>(j)].lower;
    root_node.upper[static_cast<size_t>(j)] = instance.variables[static_cast<size_t>(j)].upper;
  }
  root_node.bound_estimate = sign * root.objective;
  open.push(root_node);

  double best_obj = -kInf;    // max-normalized incumbent
  double discarded_ub = -kInf;  // best bound among nodes pruned by the gap
  bool stopped_early = false;

  auto rel_gap_of = [&](double ub, double lb) {
    return (ub - lb) / std::max(std::fabs(ub), 1e-10);
  };

  while (!open.empty()) {
    if (res.nodes >= options.node_limit || elapsed() > options.time_budget_seconds) {
      stopped_early = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (res.has_incumbent && rel_gap_of(node.bound_estimate, best_obj) <= options.rel_gap) {
      discarded_ub = std::max(discarded_ub, node.bound_estimate);
      continue;  // cannot improve beyond the requested gap
    }
    ++res.nodes;

    for (int j = 0; j < n; ++j) {
      work.variables[static_cast<size_t>(j)].lower = node.lower[static_cast<size_t>(j)];
      work.variables[static_cast<size_t>(j)].upper = node.upper[static_cast<size_t>(j)];
    }
    LpSolution lp = solve_lp(work);
    if (lp.status == LpStatus::Infeasible) continue;
    if (lp.status == LpStatus::Unbounded) {
      res.status = MipStatus::Unbounded;
      res.dual_bound = sign * kInf;
      res.time_seconds = elapsed();
      return res;
    }
    double node_bound = sign * lp.objective;
    if (res.has_incumbent && node_bound <= best_obj + 1e-12 * (1.0 + std::fabs(best_obj))) {
      discarded_ub = std::max(discarded_ub, node_bound);
      continue;
    }

    int branch_var = fractional_var(lp.primal);
    if (branch_var < 0) {
      if (!res.has_incumbent || node_bound > best_obj) {
        best_obj = node_bound;
        res.has_incumbent = true;
        res.solution = lp.primal;
        // Snap near-integral values so downstream consumers see integers.
        for (int j = 0; j < n; ++j)
          if (instance.is_integer_kind(j))
            res.solution[static_cast<size_t>(j)] = std::round(res.solution[static_cast<size_t>(j)]);
      }
      continue;
    }

    double xj = lp.primal[static_cast<size_t>(branch_var)];
    Node down = node, up = node;
    down.upper[static_cast<size_t>(branch_var)] = std::floor(xj);
    up.lower[static_cast<size_t>(branch_var)] = std::ceil(xj);
    down.bound_estimate = up.bound_estimate = node_bound;
    down.depth = up.depth = node.depth + 1;
    open.push(std::move(down));
    open.push(std::move(up));

    if (res.has_incumbent) {
      double global_ub = best_obj;
      if (!open.empty()) global_ub = std::max(global_ub, open.top().bound_estimate);
      if (rel_gap_of(global_ub, best_obj) <= options.rel_gap && options.rel_gap > 0) {
        stopped_early = true;
        break;
      }
    }
  }

  // Global dual bound: incumbent, gap-pruned bounds, and open-node estimates.
  double dual = res.has_incumbent ? best_obj : -kInf;
  dual = std::max(dual, discarded_ub);
  if (!open.empty()) dual = std::max(dual, open.top().bound_estimate);
  if (open.empty() && !stopped_early) {
    res.status = res.has_incumbent ? MipStatus::Optimal : MipStatus::Infeasible;
    if (!res.has_incumbent) dual = -kInf;
  } else {
    res.status = res.has_incumbent ? MipStatus::Feasible : MipStatus::BoundOnly;
    if (!std::isfinite(dual)) dual = sign * root.objective;
  }

  res.dual_bound = sign * dual;
  res.incumbent = res.has_incumbent ? sign * best_obj : 0.0;
  res.time_seconds = elapsed();
  return res;
}

}  // namespace mipdecomp
