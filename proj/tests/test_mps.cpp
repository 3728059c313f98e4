#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "gridplan/errors.hpp"
#include "gridplan/milp/mps.hpp"
#include "gridplan/milp/solver.hpp"

using namespace gridplan;
using namespace gridplan::milp;

namespace {

Problem sample_problem() {
    Problem p;
    p.name = "sample";
    int b = p.add_variable("build", 0, 1, VarKind::Binary);
    int x = p.add_variable("flow", -2.5, 7.25);
    int y = p.add_variable("spill", 0, kInf);
    int z = p.add_variable("angle", -kInf, kInf);
    p.set_objective_coeff(b, 100.0);
    p.set_objective_coeff(x, -1.0 / 3.0);
    p.set_objective_coeff(y, 2.0);
    p.set_objective_constant(5.5);
    int c1 = p.add_constraint("cap", Relation::LessEqual, 4.0);
    p.add_coeff(c1, x, 1.0);
    p.add_coeff(c1, b, -3.3333333333333331);
    int c2 = p.add_constraint("bal", Relation::Equal, 1.0);
    p.add_coeff(c2, x, 1.0);
    p.add_coeff(c2, y, -1.0);
    p.add_coeff(c2, z, 0.125);
    int c3 = p.add_constraint("floor", Relation::GreaterEqual, -2.0);
    p.add_coeff(c3, z, 1.0);
    p.add_coeff(c3, y, 0.1);
    return p;
}

}  // namespace

TEST_CASE("mps: round-trip is structurally exact") {
    Problem p = sample_problem();
    std::string text = to_mps(p);
    Problem q = parse_mps(text, "roundtrip");
    CHECK(structurally_equal(p, q));
    // And the round-trip of the round-trip is byte-identical.
    CHECK(to_mps(q) == text);
}

TEST_CASE("mps: hand-authored fixture parses to the expected problem") {
    const char* text =
        "NAME tiny\n"
        "ROWS\n"
        " N obj\n"
        " L c1\n"
        " G c2\n"
        "COLUMNS\n"
        "    x  obj  1.5  c1  1\n"
        "    x  c2  2\n"
        "    MARKERX  'MARKER'  'INTORG'\n"
        "    y  obj  -1  c1  3\n"
        "    MARKERY  'MARKER'  'INTEND'\n"
        "RHS\n"
        "    rhs  c1  10   c2  1\n"
        "    rhs  obj  -7\n"
        "BOUNDS\n"
        " UP BND x 4\n"
        " BV BND y\n"
        "ENDATA\n";
    Problem p = parse_mps(text, "tiny");
    REQUIRE(p.num_variables() == 2);
    REQUIRE(p.num_constraints() == 2);
    CHECK(p.variable(0).name == "x");
    CHECK(p.variable(0).lower == 0.0);
    CHECK(p.variable(0).upper == 4.0);
    CHECK(p.variable(0).kind == VarKind::Continuous);
    CHECK(p.variable(1).name == "y");
    CHECK(p.variable(1).kind == VarKind::Binary);
    CHECK(p.objective_coeff(0) == 1.5);
    CHECK(p.objective_coeff(1) == -1.0);
    CHECK(p.objective_constant() == 7.0);
    CHECK(p.constraint(0).relation == Relation::LessEqual);
    CHECK(p.constraint(0).rhs == 10.0);
    CHECK(p.constraint(1).relation == Relation::GreaterEqual);
    // Solving the parsed fixture: min 1.5x - y + 7 st x + 3y <= 10, 2x >= 1.
    Solution s = solve_milp(p);
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.objective == doctest::Approx(1.5 * 0.5 - 1.0 + 7.0));
}

TEST_CASE("mps: unknown section is a named error") {
    const char* text =
        "NAME bad\n"
        "ROWS\n"
        " N obj\n"
        "RANGES\n"
        "ENDATA\n";
    CHECK_THROWS_WITH_AS(parse_mps(text, "bad"), doctest::Contains("RANGES"), ParseError);
}

TEST_CASE("mps: general integers are rejected by name") {
    const char* text =
        "NAME gi\n"
        "ROWS\n"
        " N obj\n"
        "COLUMNS\n"
        "    M1 'MARKER' 'INTORG'\n"
        "    k  obj  1\n"
        "    M2 'MARKER' 'INTEND'\n"
        "BOUNDS\n"
        " UP BND k 5\n"
        "ENDATA\n";
    CHECK_THROWS_WITH_AS(parse_mps(text, "gi"), doctest::Contains("k"), ParseError);
}

TEST_CASE("mps: file i/o round-trip") {
    Problem p = sample_problem();
    std::string path = "mps_roundtrip_test.mps";
    write_mps(p, path);
    Problem q = read_mps(path);
    CHECK(structurally_equal(p, q));
    std::remove(path.c_str());
}

TEST_CASE("mps: missing ENDATA is an error") {
    CHECK_THROWS_AS(parse_mps("NAME x\nROWS\n N obj\n", "noend"), ParseError);
}
