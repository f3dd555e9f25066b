#include "mipdecomp/mip_instance.hpp"

#include <algorithm>
#include <numeric>

namespace mipdecomp {

std::int64_t MipInstance::nonzeros() const {
  std::int64_t total = 0;
  for (const auto& c : constraints) total += static_cast<std::int64_t>(c.entries.size());
  return total;
}

void MipInstance::validate() const {
  const int n = num_vars();
  if (objective.size() != variables.size())
    throw std::invalid_argument("objective length does not match variable count");
  for (const auto& v : variables) {
    if (v.lower > v.upper)
      throw std::invalid_argument("variable '" + v.name + "' has lower > upper");
    if (v.kind == VarKind::Binary && (v.lower < 0.0 || v.upper > 1.0))
      throw std::invalid_argument("binary variable '" + v.name + "' has bounds outside [0,1]");
  }
  for (const auto& c : constraints) {
    int prev = -1;
    for (const auto& e : c.entries) {
      if (e.column < 0 || e.column >= n)
        throw std::invalid_argument("constraint '" + c.name + "' references invalid column");
      if (e.column <= prev)
        throw std::invalid_argument("constraint '" + c.name + "' has unsorted or duplicate columns");
      prev = e.column;
    }
  }
}

MipInstance lp_relaxation(const MipInstance& instance) {
  MipInstance out = instance;
  for (auto& v : out.variables) v.kind = VarKind::Continuous;
  return out;
}

namespace {

std::pair<double, double> mean_stddev(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size()))};
}

}  // namespace

InstanceFeatureVector extract_instance_features(const MipInstance& instance) {
  if (instance.constraints.empty())
    throw std::invalid_argument("instance features undefined for zero constraints");
  InstanceFeatureVector f;
  const double n = static_cast<double>(instance.num_vars());
  const double m = static_cast<double>(instance.num_constraints());
  f.num_vars = n;
  f.num_constraints = m;
  f.num_nonzeros = static_cast<double>(instance.nonzeros());

  int nbin = 0, nint = 0, ncont = 0;
  for (const auto& v : instance.variables) {
    switch (v.kind) {
      case VarKind::Binary: ++nbin; break;
      case VarKind::Integer: ++nint; break;
      case VarKind::Continuous: ++ncont; break;
    }
  }
  f.prop_binary = nbin / n;
  f.prop_integer = nint / n;
  f.prop_continuous = ncont / n;
  f.matrix_density = f.num_nonzeros / (n * m);

  std::vector<double> row_nz, abs_rhs;
  int eq = 0;
  for (const auto& c : instance.constraints) {
    row_nz.push_back(static_cast<double>(c.entries.size()));
    abs_rhs.push_back(std::fabs(c.rhs));
    if (c.relation == Relation::Equal) ++eq;
  }
  std::vector<double> abs_obj;
  abs_obj.reserve(instance.objective.size());
  for (double c : instance.objective) abs_obj.push_back(std::fabs(c));

  std::tie(f.mean_row_nonzeros, f.stddev_row_nonzeros) = mean_stddev(row_nz);
  std::tie(f.mean_abs_rhs, f.stddev_abs_rhs) = mean_stddev(abs_rhs);
  std::tie(f.mean_abs_obj, f.stddev_abs_obj) = mean_stddev(abs_obj);
  f.prop_equality = eq / m;
  return f;
}

std::vector<double> InstanceFeatureVector::to_vector() const {
  return {num_vars,        num_constraints,    num_nonzeros, prop_binary,
          prop_integer,    prop_continuous,    matrix_density, mean_row_nonzeros,
          stddev_row_nonzeros, mean_abs_rhs,   stddev_abs_rhs, mean_abs_obj,
          stddev_abs_obj,  prop_equality};
}

std::vector<std::string> InstanceFeatureVector::field_names() {
  return {"num_vars",        "num_constraints",    "num_nonzeros", "prop_binary",
          "prop_integer",    "prop_continuous",    "matrix_density", "mean_row_nonzeros",
          "stddev_row_nonzeros", "mean_abs_rhs",   "stddev_abs_rhs", "mean_abs_obj",
          "stddev_abs_obj",  "prop_equality"};
}

}  // namespace mipdecomp
