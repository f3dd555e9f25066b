#pragma once

#include <string>
#include <vector>

#include "mipdecomp/mip_instance.hpp"

namespace mipdecomp {

enum class DecompositionSource { Greedy, Nsga2, NoneRelaxed, Manual };

std::string to_string(DecompositionSource s);
DecompositionSource decomposition_source_from_string(const std::string& s);

struct Subproblem {
  std::vector<int> variables;    // sorted ascending
  std::vector<int> constraints;  // sorted ascending
};

/// A constraint-relaxation decomposition: the relaxed rows form the border,
/// the remaining rows fall apart into independent blocks.
struct Decomposition {
  std::string instance_id;
  std::vector<int> relaxed;  // sorted ascending, unique
  std::vector<Subproblem> subproblems;
  DecompositionSource source = DecompositionSource::Manual;
};

struct DecompositionStats {
  int m_l = 0;  // relaxed constraint count
  int n_l = 0;  // linking variables, always 0 for constraint-only borders
  int m = 0;    // total constraints
  int n = 0;    // total variables
  int K = 0;    // subproblem count
  std::vector<std::int64_t> block_nonzeros;   // nz_i per block
  std::int64_t block_nonzero_total = 0;       // sum of nz_i
  std::vector<double> block_densities;        // d_k per block, over blocks with area > 0
  std::int64_t border_nz = 0;                 // nonzeros in relaxed rows
  std::int64_t border_area = 0;               // t: border vars x border rows
  std::int64_t block_area_total = 0;          // s: sum of block areas
  int largest_subproblem_vars = 0;
  int single_var_subproblems = 0;
};

/// Connected components of the variable/constraint hypergraph once the
/// relaxed hyperedges are removed. Runs in O(nonzeros). Variables touching
/// no remaining constraint become single-variable subproblems.
Decomposition partition(const MipInstance& instance, std::vector<int> relaxed,
                        DecompositionSource source = DecompositionSource::Manual);

/// Reinstates redundant relaxed constraints to fixpoint:
///   rule 1 - the constraint's variables are a subset of one block's variables;
///   rule 2 - all its variables live in single-variable subproblems.
/// The result is re-partitioned and canonical.
Decomposition remove_redundant_constraints(const MipInstance& instance,
                                           const Decomposition& decomp);

/// Dedup key: instance id plus the sorted relaxed index list.
std::string canonical_key(const Decomposition& decomp);

DecompositionStats compute_stats(const MipInstance& instance, const Decomposition& decomp);

/// Structural sanity check used by tests and the dataset loader.
void validate_decomposition(const MipInstance& instance, const Decomposition& decomp);

}  // namespace mipdecomp
