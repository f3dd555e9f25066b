#include "mipdecomp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mipdecomp {

namespace {

constexpr double kFeasTol = 1e-7;
constexpr double kOptTol = 1e-7;
constexpr double kPivotTol = 1e-9;
constexpr int kMaxIterations = 200000;

enum class ColStatus { Basic, AtLower, AtUpper, FreeZero };

// Bounds-only optimum when the instance has no constraints.
LpSolution solve_bounds_only(const MipInstance& inst, const std::vector<double>& cmax) {
  LpSolution sol;
  sol.primal.assign(inst.variables.size(), 0.0);
  double z = 0.0;
  for (size_t j = 0; j < inst.variables.size(); ++j) {
    const Variable& v = inst.variables[j];
    if (v.lower > v.upper) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    double x;
    if (cmax[j] > 0) x = v.upper;
    else if (cmax[j] < 0) x = v.lower;
    else x = std::isfinite(v.lower) ? v.lower : (std::isfinite(v.upper) ? v.upper : 0.0);
    if (!std::isfinite(x) && cmax[j] != 0.0) {
      sol.status = LpStatus::Unbounded;
      return sol;
    }
    if (!std::isfinite(x)) x = 0.0;
    sol.primal[j] = x;
    z += cmax[j] * x;
  }
  sol.objective = z;
  return sol;
}

class Simplex {
 public:
  explicit Simplex(const MipInstance& inst) : inst_(inst) {
    n_ = inst.num_vars();
    m_ = inst.num_constraints();
    total_ = n_ + 2 * m_;  // structurals, slacks, artificials
    build();
  }

  LpSolution run() {
    LpSolution sol;
    // Phase 1: drive artificial infeasibility to zero.
    use_phase1_ = true;
    if (!iterate()) throw LpNumericalError("phase 1 stalled");
    if (phase_objective() < -kFeasTol * (1.0 + bnorm_)) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    pin_artificials();
    use_phase1_ = false;
    if (!iterate()) throw LpNumericalError("phase 2 stalled");
    if (unbounded_) {
      sol.status = LpStatus::Unbounded;
      return sol;
    }
    sol.status = LpStatus::Optimal;
    sol.primal.assign(static_cast<size_t>(n_), 0.0);
    for (int j = 0; j < n_; ++j) sol.primal[static_cast<size_t>(j)] = value(j);
    double z = 0.0;
    for (int j = 0; j < n_; ++j) z += cmax_[static_cast<size_t>(j)] * sol.primal[static_cast<size_t>(j)];
    sol.objective = z;
    // Duals from the reduced costs of the artificial columns:
    // d_art_i = -y_i * sigma_i.
    sol.duals.assign(static_cast<size_t>(m_), 0.0);
    for (int i = 0; i < m_; ++i) {
      int a = n_ + m_ + i;
      sol.duals[static_cast<size_t>(i)] = -obj2_[static_cast<size_t>(a)] * sigma_[static_cast<size_t>(i)];
    }
    return sol;
  }

  static std::vector<double> max_objective(const MipInstance& inst) {
    std::vector<double> c(inst.objective);
    if (inst.sense == ObjectiveSense::Minimize)
      for (double& v : c) v = -v;
    return c;
  }

 private:
  void build() {
    cmax_ = max_objective(inst_);
    lower_.assign(static_cast<size_t>(total_), 0.0);
    upper_.assign(static_cast<size_t>(total_), 0.0);
    for (int j = 0; j < n_; ++j) {
      lower_[static_cast<size_t>(j)] = inst_.variables[static_cast<size_t>(j)].lower;
      upper_[static_cast<size_t>(j)] = inst_.variables[static_cast<size_t>(j)].upper;
    }
    for (int i = 0; i < m_; ++i) {
      int s = n_ + i;
      switch (inst_.constraints[static_cast<size_t>(i)].relation) {
        case Relation::LessEqual: lower_[static_cast<size_t>(s)] = 0; upper_[static_cast<size_t>(s)] = kInf; break;
        case Relation::GreaterEqual: lower_[static_cast<size_t>(s)] = -kInf; upper_[static_cast<size_t>(s)] = 0; break;
        case Relation::Equal: lower_[static_cast<size_t>(s)] = 0; upper_[static_cast<size_t>(s)] = 0; break;
      }
    }

    status_.assign(static_cast<size_t>(total_), ColStatus::AtLower);
    nb_value_.assign(static_cast<size_t>(total_), 0.0);
    for (int j = 0; j < n_ + m_; ++j) {
      double l = lower_[static_cast<size_t>(j)], u = upper_[static_cast<size_t>(j)];
      if (std::isfinite(l)) { status_[static_cast<size_t>(j)] = ColStatus::AtLower; nb_value_[static_cast<size_t>(j)] = l; }
      else if (std::isfinite(u)) { status_[static_cast<size_t>(j)] = ColStatus::AtUpper; nb_value_[static_cast<size_t>(j)] = u; }
      else { status_[static_cast<size_t>(j)] = ColStatus::FreeZero; nb_value_[static_cast<size_t>(j)] = 0.0; }
    }

    // Row activity at the nonbasic start point, then artificial = residual.
    std::vector<double> activity(static_cast<size_t>(m_), 0.0);
    for (int i = 0; i < m_; ++i) {
      for (const auto& e : inst_.constraints[static_cast<size_t>(i)].entries)
        activity[static_cast<size_t>(i)] += e.value * nb_value_[static_cast<size_t>(e.column)];
      activity[static_cast<size_t>(i)] += nb_value_[static_cast<size_t>(n_ + i)];  // slack
    }

    sigma_.assign(static_cast<size_t>(m_), 1.0);
    tableau_.assign(static_cast<size_t>(m_), std::vector<double>(static_cast<size_t>(total_), 0.0));
    rhs_.assign(static_cast<size_t>(m_), 0.0);
    basis_.assign(static_cast<size_t>(m_), 0);
    bnorm_ = 0.0;
    for (int i = 0; i < m_; ++i) {
      double b = inst_.constraints[static_cast<size_t>(i)].rhs;
      bnorm_ = std::max(bnorm_, std::fabs(b));
      double resid = b - activity[static_cast<size_t>(i)];
      double sg = resid >= 0 ? 1.0 : -1.0;
      sigma_[static_cast<size_t>(i)] = sg;
      auto& row = tableau_[static_cast<size_t>(i)];
      for (const auto& e : inst_.constraints[static_cast<size_t>(i)].entries)
        row[static_cast<size_t>(e.column)] = e.value / sg;
      row[static_cast<size_t>(n_ + i)] = 1.0 / sg;   // slack
      row[static_cast<size_t>(n_ + m_ + i)] = 1.0;   // artificial (already sigma/sigma)
      rhs_[static_cast<size_t>(i)] = b / sg;
      int a = n_ + m_ + i;
      basis_[static_cast<size_t>(i)] = a;
      status_[static_cast<size_t>(a)] = ColStatus::Basic;
      lower_[static_cast<size_t>(a)] = 0.0;
      upper_[static_cast<size_t>(a)] = kInf;
    }

    // Phase-1 reduced costs: cost -1 on artificials, basis = artificials.
    obj1_.assign(static_cast<size_t>(total_), 0.0);
    for (int j = 0; j < total_; ++j) {
      double sum = 0.0;
      for (int i = 0; i < m_; ++i) sum += tableau_[static_cast<size_t>(i)][static_cast<size_t>(j)];
      obj1_[static_cast<size_t>(j)] = sum;  // = 0 - (-1)*sum
    }
    for (int i = 0; i < m_; ++i) obj1_[static_cast<size_t>(n_ + m_ + i)] = 0.0;
    // Phase-2 reduced costs: artificials have zero cost, so just c.
    obj2_.assign(static_cast<size_t>(total_), 0.0);
    for (int j = 0; j < n_; ++j) obj2_[static_cast<size_t>(j)] = cmax_[static_cast<size_t>(j)];

    refresh_basic_values();
  }

  double value(int j) const {
    return status_[static_cast<size_t>(j)] == ColStatus::Basic ? basic_value_[static_cast<size_t>(j)]
                                                               : nb_value_[static_cast<size_t>(j)];
  }

  void refresh_basic_values() {
    basic_value_.assign(static_cast<size_t>(total_), 0.0);
    std::vector<double> xb(rhs_);
    for (int j = 0; j < total_; ++j) {
      if (status_[static_cast<size_t>(j)] == ColStatus::Basic) continue;
      double v = nb_value_[static_cast<size_t>(j)];
      if (v == 0.0) continue;
      for (int i = 0; i < m_; ++i)
        xb[static_cast<size_t>(i)] -= tableau_[static_cast<size_t>(i)][static_cast<size_t>(j)] * v;
    }
    for (int i = 0; i < m_; ++i) basic_value_[static_cast<size_t>(basis_[static_cast<size_t>(i)])] = xb[static_cast<size_t>(i)];
  }

  double phase_objective() const {
    double z = 0.0;
    for (int i = 0; i < m_; ++i) {
      int a = n_ + m_ + i;
      z -= value(a);
    }
    return z;
  }

  // Fix remaining artificials to zero before phase 2, pivoting basic ones
  // out where a nonzero row entry exists.
  void pin_artificials() {
    for (int i = 0; i < m_; ++i) {
      int b = basis_[static_cast<size_t>(i)];
      if (b < n_ + m_) continue;
      int pivot_col = -1;
      for (int j = 0; j < n_ + m_; ++j) {
        if (status_[static_cast<size_t>(j)] == ColStatus::Basic) continue;
        if (std::fabs(tableau_[static_cast<size_t>(i)][static_cast<size_t>(j)]) > 1e-7) { pivot_col = j; break; }
      }
      if (pivot_col >= 0) {
        // Basic artificial sits at zero, so this pivot is degenerate.
        ColStatus leave_status = ColStatus::AtLower;
        pivot(i, pivot_col, leave_status);
      }
    }
    for (int i = 0; i < m_; ++i) {
      int a = n_ + m_ + i;
      upper_[static_cast<size_t>(a)] = 0.0;
      if (status_[static_cast<size_t>(a)] != ColStatus::Basic) {
        status_[static_cast<size_t>(a)] = ColStatus::AtLower;
        nb_value_[static_cast<size_t>(a)] = 0.0;
      }
    }
    refresh_basic_values();
  }

  void pivot(int row, int col, ColStatus leaving_status) {
    int leaving = basis_[static_cast<size_t>(row)];
    double piv = tableau_[static_cast<size_t>(row)][static_cast<size_t>(col)];
    auto& prow = tableau_[static_cast<size_t>(row)];
    double inv = 1.0 / piv;
    for (int j = 0; j < total_; ++j) prow[static_cast<size_t>(j)] *= inv;
    rhs_[static_cast<size_t>(row)] *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      double f = tableau_[static_cast<size_t>(i)][static_cast<size_t>(col)];
      if (f == 0.0) continue;
      auto& r = tableau_[static_cast<size_t>(i)];
      for (int j = 0; j < total_; ++j) r[static_cast<size_t>(j)] -= f * prow[static_cast<size_t>(j)];
      rhs_[static_cast<size_t>(i)] -= f * rhs_[static_cast<size_t>(row)];
    }
    for (auto* obj : {&obj1_, &obj2_}) {
      double f = (*obj)[static_cast<size_t>(col)];
      if (f == 0.0) continue;
      for (int j = 0; j < total_; ++j) (*obj)[static_cast<size_t>(j)] -= f * prow[static_cast<size_t>(j)];
    }
    basis_[static_cast<size_t>(row)] = col;
    status_[static_cast<size_t>(col)] = ColStatus::Basic;
    status_[static_cast<size_t>(leaving)] = leaving_status;
    nb_value_[static_cast<size_t>(leaving)] =
        leaving_status == ColStatus::AtLower ? lower_[static_cast<size_t>(leaving)]
        : leaving_status == ColStatus::AtUpper ? upper_[static_cast<size_t>(leaving)]
                                               : 0.0;
  }

  // One full simplex loop for the active phase. Returns false on stall.
  bool iterate() {
    unbounded_ = false;
    int stall = 0;
    bool bland = false;
    double last_obj = current_objective();
    for (int iter = 0; iter < kMaxIterations; ++iter) {
      const std::vector<double>& obj = use_phase1_ ? obj1_ : obj2_;
      int entering = -1;
      double best = 0.0;
      int direction = 0;  // +1 increase, -1 decrease
      for (int j = 0; j < total_; ++j) {
        ColStatus st = status_[static_cast<size_t>(j)];
        if (st == ColStatus::Basic) continue;
        if (lower_[static_cast<size_t>(j)] == upper_[static_cast<size_t>(j)]) continue;  // fixed
        double d = obj[static_cast<size_t>(j)];
        bool can_inc = (st == ColStatus::AtLower || st == ColStatus::FreeZero) && d > kOptTol;
        bool can_dec = (st == ColStatus::AtUpper || st == ColStatus::FreeZero) && d < -kOptTol;
        if (!can_inc && !can_dec) continue;
        if (bland) { entering = j; direction = can_inc ? 1 : -1; break; }
        if (std::fabs(d) > best) {
          best = std::fabs(d);
          entering = j;
          direction = can_inc ? 1 : -1;
        }
      }
      if (entering < 0) return true;  // optimal for this phase

      // Ratio test along +/- direction of the entering variable.
      double limit = kInf;
      int block_row = -1;
      ColStatus block_status = ColStatus::AtLower;
      double range = upper_[static_cast<size_t>(entering)] - lower_[static_cast<size_t>(entering)];
      if (std::isfinite(range)) limit = range;
      for (int i = 0; i < m_; ++i) {
        double a = tableau_[static_cast<size_t>(i)][static_cast<size_t>(entering)] * direction;
        if (std::fabs(a) <= kPivotTol) continue;
        int k = basis_[static_cast<size_t>(i)];
        double xk = basic_value_[static_cast<size_t>(k)];
        double step;
        ColStatus hits;
        if (a > 0) {  // basic decreases
          if (!std::isfinite(lower_[static_cast<size_t>(k)])) continue;
          step = (xk - lower_[static_cast<size_t>(k)]) / a;
          hits = ColStatus::AtLower;
        } else {  // basic increases
          if (!std::isfinite(upper_[static_cast<size_t>(k)])) continue;
          step = (xk - upper_[static_cast<size_t>(k)]) / a;  // a < 0
          hits = ColStatus::AtUpper;
        }
        step = std::max(step, 0.0);
        if (step < limit - 1e-12) {
          limit = step;
          block_row = i;
          block_status = hits;
        } else if (bland && block_row >= 0 && step <= limit + 1e-12 &&
                   k < basis_[static_cast<size_t>(block_row)]) {
          limit = step;
          block_row = i;
          block_status = hits;
        }
      }

      if (!std::isfinite(limit)) {
        if (use_phase1_) return true;  // phase-1 objective is bounded; treat as done
        unbounded_ = true;
        return true;
      }

      if (block_row < 0) {
        // Bound flip on the entering variable itself.
        if (direction > 0) {
          status_[static_cast<size_t>(entering)] = ColStatus::AtUpper;
          nb_value_[static_cast<size_t>(entering)] = upper_[static_cast<size_t>(entering)];
        } else {
          status_[static_cast<size_t>(entering)] = ColStatus::AtLower;
          nb_value_[static_cast<size_t>(entering)] = lower_[static_cast<size_t>(entering)];
        }
        refresh_basic_values();
      } else {
        pivot(block_row, entering, block_status);
        // Entering variable's value moved off its bound; it is basic now and
        // refresh_basic_values recomputes it from the tableau.
        refresh_basic_values();
      }

      double now = current_objective();
      if (now <= last_obj + 1e-12) {
        if (++stall > 2 * (m_ + total_)) bland = true;
      } else {
        stall = 0;
        bland = false;
      }
      last_obj = now;
    }
    return false;
  }

  double current_objective() const {
    if (use_phase1_) return phase_objective();
    double z = 0.0;
    for (int j = 0; j < n_; ++j) z += cmax_[static_cast<size_t>(j)] * value(j);
    return z;
  }

  const MipInstance& inst_;
  int n_ = 0, m_ = 0, total_ = 0;
  std::vector<double> cmax_;
  std::vector<double> lower_, upper_;
  std::vector<ColStatus> status_;
  std::vector<double> nb_value_;     // value of each nonbasic column
  std::vector<double> basic_value_;  // value of each basic column
  std::vector<std::vector<double>> tableau_;
  std::vector<double> rhs_;
  std::vector<int> basis_;
  std::vector<double> sigma_;
  std::vector<double> obj1_, obj2_;
  double bnorm_ = 0.0;
  bool use_phase1_ = true;
  bool unbounded_ = false;
};

}  // namespace

LpSolution solve_lp(const MipInstance& instance) {
  MipInstance relaxed = lp_relaxation(instance);
  std::vector<double> cmax = Simplex::max_objective(relaxed);

  LpSolution sol;
  if (relaxed.num_constraints() == 0) {
    sol = solve_bounds_only(relaxed, cmax);
  } else {
    Simplex s(relaxed);
    sol = s.run();
  }
  if (sol.status == LpStatus::Optimal) {
    if (instance.sense == ObjectiveSense::Minimize) {
      sol.objective = -sol.objective;
      for (double& d : sol.duals) d = -d;
    }
    sol.objective += instance.objective_constant;
  }
  return sol;
}

}  // namespace mipdecomp
