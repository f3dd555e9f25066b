#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mipdecomp/mip_instance.hpp"
#include "mipdecomp/mps.hpp"
#include "test_util.hpp"

using namespace mipdecomp;

namespace {

const char* kTiny = R"(NAME tiny
ROWS
 N obj
 L c1
COLUMNS
 x obj 1 c1 1
 y obj 1 c1 1
RHS
 rhs c1 4
ENDATA
)";

const char* kTinyInt = R"(NAME tiny
ROWS
 N obj
 L c1
COLUMNS
 M1 'MARKER' 'INTORG'
 x obj 1 c1 1
 y obj 1 c1 1
 M2 'MARKER' 'INTEND'
RHS
 rhs c1 4
ENDATA
)";

}  // namespace

TEST_CASE("basic parse") {
  MipInstance inst = parse_mps_string(kTiny);
  CHECK(inst.name == "tiny");
  CHECK(inst.num_vars() == 2);
  CHECK(inst.num_constraints() == 1);
  CHECK(inst.nonzeros() == 2);
  CHECK(inst.sense == ObjectiveSense::Minimize);
  CHECK(inst.constraints[0].relation == Relation::LessEqual);
  CHECK(inst.constraints[0].rhs == 4.0);
  CHECK(inst.variables[0].kind == VarKind::Continuous);
}

TEST_CASE("integer markers default to binary") {
  MipInstance inst = parse_mps_string(kTinyInt);
  CHECK(inst.variables[0].kind == VarKind::Binary);
  CHECK(inst.variables[1].kind == VarKind::Binary);
  CHECK(inst.variables[0].upper == 1.0);
}

TEST_CASE("ranges and bounds against a hand-built instance") {
  // 5 vars, 4 declared rows; the ranged E row splits into a <=/>= pair.
  const char* text = R"(NAME rb
OBJSENSE
 MAX
ROWS
 N obj
 L r1
 G r2
 E r3
 L r4
COLUMNS
 a obj 2 r1 1 r2 1
 b obj 3 r1 2 r3 1
 MK 'MARKER' 'INTORG'
 c obj -1 r3 2 r4 1
 MK 'MARKER' 'INTEND'
 d r2 -1 r4 3
 e obj 1 r4 1
RHS
 rhs r1 10 r2 -2 r3 5 r4 8
 rhs obj -7
RANGES
 rng r1 4 r3 2
BOUNDS
 UP bnd a 6
 LO bnd b 1
 MI bnd d
 FX bnd e 2.5
ENDATA
)";
  MipInstance got = parse_mps_string(text);

  MipInstance want;
  want.name = "rb";
  want.sense = ObjectiveSense::Maximize;
  want.objective = {2, 3, -1, 0, 1};
  want.objective_constant = 7;  // RHS on the N row carries a negated constant
  want.variables = {
      {"a", VarKind::Continuous, 0, 6},
      {"b", VarKind::Continuous, 1, kInf},
      {"c", VarKind::Binary, 0, 1},
      {"d", VarKind::Continuous, -kInf, kInf},
      {"e", VarKind::Continuous, 2.5, 2.5},
  };
  want.constraints = {
      {"r1", {{0, 1}, {1, 2}}, Relation::LessEqual, 10},
      {"r2", {{0, 1}, {3, -1}}, Relation::GreaterEqual, -2},
      {"r3", {{1, 1}, {2, 2}}, Relation::LessEqual, 7},   // hi side of range 2
      {"r4", {{2, 1}, {3, 3}, {4, 1}}, Relation::LessEqual, 8},
      {"r1__rlo", {{0, 1}, {1, 2}}, Relation::GreaterEqual, 6},
      {"r3__rlo", {{1, 1}, {2, 2}}, Relation::GreaterEqual, 5},
  };
  CHECK(testutil::same_instance(got, want));
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_AS(parse_mps_string("GARBAGE\n"), MpsParseError);
  CHECK_THROWS_AS(parse_mps_string("ROWS\n N obj\nCOLUMNS\n x nosuchrow 1\nENDATA\n"),
                  MpsParseError);
  // duplicate (row, column)
  const char* dup = R"(ROWS
 N obj
 L c1
COLUMNS
 x c1 1 c1 2
ENDATA
)";
  CHECK_THROWS_AS(parse_mps_string(dup), MpsParseError);
  try {
    parse_mps_string(dup);
  } catch (const MpsParseError& e) {
    CHECK(e.line() == 5);
  }
}

TEST_CASE("round trip: random instances") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 20; ++t) {
    MipInstance inst = testutil::random_instance(rng);
    MipInstance back = parse_mps_string(write_mps_string(inst));
    CAPTURE(t);
    CHECK(testutil::same_instance(inst, back));
  }
}

TEST_CASE("round trip: infinite upper bounds stay infinite") {
  MipInstance inst;
  inst.name = "inf";
  inst.objective = {1, 1};
  inst.variables = {{"x", VarKind::Continuous, 0, kInf}, {"y", VarKind::Continuous, 2, kInf}};
  inst.constraints = {{"c", {{0, 1}, {1, 1}}, Relation::LessEqual, 3}};
  std::string text = write_mps_string(inst);
  CHECK(text.find(" UP ") == std::string::npos);  // no spurious finite bound
  CHECK(testutil::same_instance(inst, parse_mps_string(text)));
}

TEST_CASE("lp_relaxation") {
  MipInstance inst;
  inst.objective = {1, 2, 3};
  inst.variables = {{"x", VarKind::Binary, 0, 1},
                    {"y", VarKind::Integer, 0, 4},
                    {"z", VarKind::Continuous, -1, 1}};
  inst.constraints = {{"c", {{0, 1}, {1, 1}, {2, 1}}, Relation::LessEqual, 2}};
  MipInstance relaxed = lp_relaxation(inst);
  for (const Variable& v : relaxed.variables) CHECK(v.kind == VarKind::Continuous);
  CHECK(relaxed.variables[0].upper == 1.0);
  CHECK(relaxed.variables[1].upper == 4.0);
  CHECK(relaxed.variables[2].lower == -1.0);
  // idempotent, and a no-op on an already-continuous instance
  CHECK(testutil::same_instance(relaxed, lp_relaxation(relaxed)));
  CHECK(extract_instance_features(relaxed).prop_continuous == 1.0);
}

TEST_CASE("instance features") {
  MipInstance inst;
  inst.objective = {1, 0, 0, 2};
  inst.variables = {{"a", VarKind::Binary, 0, 1},
                    {"b", VarKind::Binary, 0, 1},
                    {"c", VarKind::Continuous, 0, 5},
                    {"d", VarKind::Integer, 0, 3}};
  inst.constraints = {{"c1", {{0, 1}, {1, 1}}, Relation::LessEqual, 2},
                      {"c2", {{2, 1}, {3, 1}}, Relation::Equal, 1}};
  InstanceFeatureVector f = extract_instance_features(inst);
  CHECK(f.prop_binary == doctest::Approx(0.5));
  CHECK(f.prop_integer == doctest::Approx(0.25));
  CHECK(f.prop_continuous == doctest::Approx(0.25));
  CHECK(f.prop_equality == doctest::Approx(0.5));
  CHECK(f.matrix_density == doctest::Approx(4.0 / 8.0));
  CHECK(f.mean_row_nonzeros == doctest::Approx(2.0));
  CHECK(f.stddev_row_nonzeros == doctest::Approx(0.0));
  CHECK(f.to_vector().size() == InstanceFeatureVector::field_names().size());
}

TEST_CASE("instance features: 480-var shape") {
  // 480 vars (240 binary), 256 constraints, 960 nonzeros spread round-robin.
  MipInstance inst;
  for (int j = 0; j < 480; ++j) {
    Variable v;
    v.name = "x" + std::to_string(j);
    if (j < 240) {
      v.kind = VarKind::Binary;
      v.upper = 1;
    } else {
      v.kind = VarKind::Continuous;
      v.upper = 10;
    }
    inst.variables.push_back(v);
    inst.objective.push_back(1.0);
  }
  int next_var = 0;
  for (int i = 0; i < 256; ++i) {
    Constraint c;
    c.name = "r" + std::to_string(i);
    int nz = (i < 192) ? 4 : 3;  // 192*4 + 64*3 = 960
    for (int k = 0; k < nz; ++k) c.entries.push_back({(next_var + k * 7) % 480, 1.0});
    std::sort(c.entries.begin(), c.entries.end(),
              [](const RowEntry& a, const RowEntry& b) { return a.column < b.column; });
    next_var = (next_var + nz * 7) % 480;
    c.rhs = 4;
    inst.constraints.push_back(std::move(c));
  }
  inst.validate();
  InstanceFeatureVector f = extract_instance_features(inst);
  CHECK(f.num_vars == 480);
  CHECK(f.num_constraints == 256);
  CHECK(f.num_nonzeros == 960);
  CHECK(f.prop_binary == doctest::Approx(0.5));
  CHECK(f.matrix_density == doctest::Approx(960.0 / (480.0 * 256.0)));
}

TEST_CASE("instance features: dense matrix and the empty guard") {
  MipInstance inst;
  inst.objective = {1, 1, 1};
  for (int j = 0; j < 3; ++j)
    inst.variables.push_back({"x" + std::to_string(j), VarKind::Continuous, 0, 1});
  for (int i = 0; i < 3; ++i)
    inst.constraints.push_back(
        {"r" + std::to_string(i), {{0, 1}, {1, 1}, {2, 1}}, Relation::LessEqual, 2});
  CHECK(extract_instance_features(inst).matrix_density == doctest::Approx(1.0));

  MipInstance empty;
  empty.objective = {1};
  empty.variables = {{"x", VarKind::Continuous, 0, 1}};
  CHECK_THROWS_AS(extract_instance_features(empty), std::invalid_argument);
}

TEST_CASE("validate catches structural defects") {
  MipInstance inst;
  inst.objective = {1};
  inst.variables = {{"x", VarKind::Binary, 0, 2}};  // binary outside [0,1]
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
  inst.variables = {{"x", VarKind::Continuous, 3, 1}};  // inverted bounds
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
  inst.variables = {{"x", VarKind::Continuous, 0, 1}};
  inst.constraints = {{"c", {{5, 1}}, Relation::LessEqual, 1}};  // bad column
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
}
