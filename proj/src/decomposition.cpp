#include "mipdecomp/decomposition.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_set>

namespace mipdecomp {

std::string to_string(DecompositionSource s) {
  switch (s) {
    case DecompositionSource::Greedy: return "greedy";
    case DecompositionSource::Nsga2: return "nsga2";
    case DecompositionSource::NoneRelaxed: return "none-relaxed";
    case DecompositionSource::Manual: return "manual";
  }
  return "manual";
}

DecompositionSource decomposition_source_from_string(const std::string& s) {
  if (s == "greedy") return DecompositionSource::Greedy;
  if (s == "nsga2") return DecompositionSource::Nsga2;
  if (s == "none-relaxed") return DecompositionSource::NoneRelaxed;
  if (s == "manual") return DecompositionSource::Manual;
  throw std::invalid_argument("unknown decomposition source: " + s);
}

Decomposition partition(const MipInstance& instance, std::vector<int> relaxed,
                        DecompositionSource source) {
  const int n = instance.num_vars();
  const int m = instance.num_constraints();
  std::sort(relaxed.begin(), relaxed.end());
  relaxed.erase(std::unique(relaxed.begin(), relaxed.end()), relaxed.end());
  for (int r : relaxed)
    if (r < 0 || r >= m) throw std::invalid_argument("relaxed constraint index out of range");

  std::vector<char> is_relaxed(static_cast<size_t>(m), 0);
  for (int r : relaxed) is_relaxed[static_cast<size_t>(r)] = 1;

  // var -> list of non-relaxed constraints touching it
  std::vector<std::vector<int>> var_rows(static_cast<size_t>(n));
  for (int i = 0; i < m; ++i) {
    if (is_relaxed[static_cast<size_t>(i)]) continue;
    for (const auto& e : instance.constraints[static_cast<size_t>(i)].entries)
      var_rows[static_cast<size_t>(e.column)].push_back(i);
  }

  // BFS over the hypergraph: alternate variable -> hyperedge -> variables.
  std::vector<int> var_comp(static_cast<size_t>(n), -1);
  std::vector<int> row_comp(static_cast<size_t>(m), -1);
  int num_comp = 0;
  std::queue<int> frontier;  // variable indices
  for (int start = 0; start < n; ++start) {
    if (var_comp[static_cast<size_t>(start)] != -1) continue;
    int comp = num_comp++;
    var_comp[static_cast<size_t>(start)] = comp;
    frontier.push(start);
    while (!frontier.empty()) {
      int v = frontier.front();
      frontier.pop();
      for (int row : var_rows[static_cast<size_t>(v)]) {
        if (row_comp[static_cast<size_t>(row)] != -1) continue;
        row_comp[static_cast<size_t>(row)] = comp;
        for (const auto& e : instance.constraints[static_cast<size_t>(row)].entries) {
          if (var_comp[static_cast<size_t>(e.column)] == -1) {
            var_comp[static_cast<size_t>(e.column)] = comp;
            frontier.push(e.column);
          }
        }
      }
    }
  }

  Decomposition d;
  d.instance_id = instance.name;
  d.relaxed = std::move(relaxed);
  d.source = source;
  d.subproblems.resize(static_cast<size_t>(num_comp));
  for (int v = 0; v < n; ++v)
    d.subproblems[static_cast<size_t>(var_comp[static_cast<size_t>(v)])].variables.push_back(v);
  for (int i = 0; i < m; ++i)
    if (!is_relaxed[static_cast<size_t>(i)])
      d.subproblems[static_cast<size_t>(row_comp[static_cast<size_t>(i)])].constraints.push_back(i);
  // A constraint with no entries lands in no component via BFS; attach each
  // such row to its own subproblem so the constraint partition is complete.
  for (int i = 0; i < m; ++i) {
    if (is_relaxed[static_cast<size_t>(i)]) continue;
    if (row_comp[static_cast<size_t>(i)] == -1) {
      Subproblem sp;
      sp.constraints.push_back(i);
      d.subproblems.push_back(std::move(sp));
    }
  }
  return d;
}

Decomposition remove_redundant_constraints(const MipInstance& instance,
                                           const Decomposition& decomp) {
  std::vector<int> relaxed = decomp.relaxed;
  Decomposition current = partition(instance, relaxed, decomp.source);
  current.instance_id = decomp.instance_id;

  while (true) {
    const int n = instance.num_vars();
    // variable -> subproblem index, and single-variable flags
    std::vector<int> var_sp(static_cast<size_t>(n), -1);
    std::vector<char> sp_single(current.subproblems.size(), 0);
    for (size_t s = 0; s < current.subproblems.size(); ++s) {
      for (int v : current.subproblems[s].variables) var_sp[static_cast<size_t>(v)] = s;
      sp_single[s] = current.subproblems[s].variables.size() == 1 ? 1 : 0;
    }

    std::vector<int> keep;
    bool changed = false;
    for (int r : current.relaxed) {
      const auto& entries = instance.constraints[static_cast<size_t>(r)].entries;
      bool rule1 = !entries.empty();
      bool rule2 = !entries.empty();
      int sp0 = entries.empty() ? -1 : var_sp[static_cast<size_t>(entries[0].column)];
      for (const auto& e : entries) {
        int sp = var_sp[static_cast<size_t>(e.column)];
        if (sp != sp0) rule1 = false;
        if (!sp_single[static_cast<size_t>(sp)]) rule2 = false;
      }
      if (rule1 || rule2) {
        changed = true;  // reinstated
      } else {
        keep.push_back(r);
      }
    }
    if (!changed) break;
    current = partition(instance, keep, decomp.source);
    current.instance_id = decomp.instance_id;
  }
  return current;
}

std::string canonical_key(const Decomposition& decomp) {
  std::ostringstream oss;
  oss << decomp.instance_id << ":";
  for (size_t i = 0; i < decomp.relaxed.size(); ++i) {
    if (i) oss << ",";
    oss << decomp.relaxed[i];
  }
  return oss.str();
}

DecompositionStats compute_stats(const MipInstance& instance, const Decomposition& decomp) {
  DecompositionStats s;
  s.m = instance.num_constraints();
  s.n = instance.num_vars();
  s.m_l = static_cast<int>(decomp.relaxed.size());
  s.n_l = 0;
  s.K = static_cast<int>(decomp.subproblems.size());

  for (const auto& sp : decomp.subproblems) {
    std::int64_t nz = 0;
    for (int c : sp.constraints)
      nz += static_cast<std::int64_t>(instance.constraints[static_cast<size_t>(c)].entries.size());
    s.block_nonzeros.push_back(nz);
    s.block_nonzero_total += nz;
    std::int64_t area = static_cast<std::int64_t>(sp.variables.size()) *
                        static_cast<std::int64_t>(sp.constraints.size());
    s.block_area_total += area;
    if (area > 0) s.block_densities.push_back(static_cast<double>(nz) / static_cast<double>(area));
    s.largest_subproblem_vars =
        std::max(s.largest_subproblem_vars, static_cast<int>(sp.variables.size()));
    if (sp.variables.size() == 1) ++s.single_var_subproblems;
  }

  std::unordered_set<int> border_vars;
  for (int r : decomp.relaxed) {
    const auto& entries = instance.constraints[static_cast<size_t>(r)].entries;
    s.border_nz += static_cast<std::int64_t>(entries.size());
    for (const auto& e : entries) border_vars.insert(e.column);
  }
  s.border_area = static_cast<std::int64_t>(border_vars.size()) *
                  static_cast<std::int64_t>(decomp.relaxed.size());
  return s;
}

void validate_decomposition(const MipInstance& instance, const Decomposition& decomp) {
  const int n = instance.num_vars();
  const int m = instance.num_constraints();
  std::vector<int> var_seen(static_cast<size_t>(n), 0), con_seen(static_cast<size_t>(m), 0);
  for (int r : decomp.relaxed) {
    if (r < 0 || r >= m) throw std::invalid_argument("relaxed index out of range");
    ++con_seen[static_cast<size_t>(r)];
  }
  if (!std::is_sorted(decomp.relaxed.begin(), decomp.relaxed.end()))
    throw std::invalid_argument("relaxed set not sorted");
  for (size_t s = 0; s < decomp.subproblems.size(); ++s) {
    for (int v : decomp.subproblems[s].variables) ++var_seen[static_cast<size_t>(v)];
    for (int c : decomp.subproblems[s].constraints) ++con_seen[static_cast<size_t>(c)];
  }
  for (int v = 0; v < n; ++v)
    if (var_seen[static_cast<size_t>(v)] != 1)
      throw std::invalid_argument("variables do not partition");
  for (int c = 0; c < m; ++c)
    if (con_seen[static_cast<size_t>(c)] != 1)
      throw std::invalid_argument("constraints do not partition");
  // No block constraint may straddle two blocks' variables.
  std::vector<int> var_sp(static_cast<size_t>(n), -1);
  for (size_t s = 0; s < decomp.subproblems.size(); ++s)
    for (int v : decomp.subproblems[s].variables) var_sp[static_cast<size_t>(v)] = s;
  for (size_t s = 0; s < decomp.subproblems.size(); ++s)
    for (int c : decomp.subproblems[s].constraints)
      for (const auto& e : instance.constraints[static_cast<size_t>(c)].entries)
        if (var_sp[static_cast<size_t>(e.column)] != static_cast<int>(s))
          throw std::invalid_argument("block constraint touches a foreign block");
}

}  // namespace mipdecomp
