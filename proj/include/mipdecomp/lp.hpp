#pragma once

#include <string>
#include <vector>

#include "mipdecomp/mip_instance.hpp"

namespace mipdecomp {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  std::vector<double> primal;  // per variable
  double objective = 0.0;      // includes the instance objective constant
  std::vector<double> duals;   // per constraint, original row order
};

/// Thrown when neither pivot rule makes progress within the iteration cap.
class LpNumericalError : public std::runtime_error {
 public:
  explicit LpNumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Solves the LP relaxation of the instance (integrality dropped internally)
/// with a dense bounded-variable two-phase primal simplex.
///
/// Dual sign convention: for a maximization problem, duals are >= 0 on <=
/// rows, <= 0 on >= rows, and free on = rows; mirrored (negated) for
/// minimization. With these signs the duals are directly usable as
/// bound-valid Lagrangian multipliers.
LpSolution solve_lp(const MipInstance& instance);

}  // namespace mipdecomp
