#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mipdecomp {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ObjectiveSense { Maximize, Minimize };
enum class Relation { LessEqual, Equal, GreaterEqual };
enum class VarKind { Binary, Integer, Continuous };

struct RowEntry {
  int column = 0;
  double value = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<RowEntry> entries;  // sorted by column, unique columns
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
};

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lower = 0.0;
  double upper = kInf;
};

/// A mixed integer program: optimize c'x subject to row relations and
/// variable bounds. Immutable by convention once built and validated.
struct MipInstance {
  std::string name;
  ObjectiveSense sense = ObjectiveSense::Minimize;
  std::vector<double> objective;  // dense, one per variable
  double objective_constant = 0.0;
  std::vector<Constraint> constraints;
  std::vector<Variable> variables;

  int num_vars() const { return static_cast<int>(variables.size()); }
  int num_constraints() const { return static_cast<int>(constraints.size()); }
  std::int64_t nonzeros() const;

  bool is_integer_kind(int j) const {
    VarKind k = variables[static_cast<size_t>(j)].kind;
    return k == VarKind::Binary || k == VarKind::Integer;
  }

  /// Throws std::invalid_argument on any structural defect (bad column
  /// index, inverted bounds, binary bounds outside [0,1]).
  void validate() const;
};

struct InstanceFeatureVector {
  double num_vars = 0;
  double num_constraints = 0;
  double num_nonzeros = 0;
  double prop_binary = 0;
  double prop_integer = 0;
  double prop_continuous = 0;
  double matrix_density = 0;
  double mean_row_nonzeros = 0;
  double stddev_row_nonzeros = 0;
  double mean_abs_rhs = 0;
  double stddev_abs_rhs = 0;
  double mean_abs_obj = 0;
  double stddev_abs_obj = 0;
  double prop_equality = 0;

  std::vector<double> to_vector() const;
  static std::vector<std::string> field_names();
};

/// Copy with every binary/integer variable made continuous; bounds kept.
MipInstance lp_relaxation(const MipInstance& instance);

/// Summary statistics of the instance itself (not of a decomposition).
/// Throws std::invalid_argument when the instance has no constraints.
InstanceFeatureVector extract_instance_features(const MipInstance& instance);

}  // namespace mipdecomp
