#include "doctest.h"
#include "lp_oracle.h"
#include "lprpg/mp.h"

#include <cmath>

using namespace lprpg::mp;

TEST_CASE("simplex on a textbook LP") {
    // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18
    MPModel m;
    int x = m.add_variable(0, kInf), y = m.add_variable(0, kInf);
    m.add_constraint({{x, 1}}, RowOp::LessEq, 4);
    m.add_constraint({{y, 2}}, RowOp::LessEq, 12);
    m.add_constraint({{x, 3}, {y, 2}}, RowOp::LessEq, 18);
    m.set_objective({{x, 3}, {y, 5}}, Sense::Maximize);
    Solution s = solve_lp(m);
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.objective == doctest::Approx(36));
    CHECK(s.values[0] == doctest::Approx(2));
    CHECK(s.values[1] == doctest::Approx(6));
}

TEST_CASE("infeasible and unbounded models") {
    MPModel m;
    int x = m.add_variable(0, kInf);
    m.add_constraint({{x, 1}}, RowOp::GreaterEq, 3);
    m.add_constraint({{x, 1}}, RowOp::LessEq, 2);
    CHECK(solve_lp(m).status == Status::Infeasible);

    MPModel u;
    int a = u.add_variable(0, kInf), b = u.add_variable(-kInf, kInf);
    u.add_constraint({{a, 1}, {b, -1}}, RowOp::LessEq, 1);
    u.set_objective({{a, 1}}, Sense::Maximize);
    CHECK(solve_lp(u).status == Status::Unbounded);
}

TEST_CASE("duplicate terms in a row are summed") {
    MPModel m;
    int x = m.add_variable(0, 10);
    m.add_constraint({{x, 1}, {x, 1}}, RowOp::LessEq, 4);
    m.set_objective({{x, 1}}, Sense::Maximize);
    CHECK(solve_lp(m).objective == doctest::Approx(2));
}

TEST_CASE("branch and bound finds the integer optimum") {
    // max x + y, 2x + 2y <= 3 over integers: 1, continuous: 1.5
    MPModel m;
    int x = m.add_variable(0, 5, VarKind::Integer), y = m.add_variable(0, 5, VarKind::Integer);
    m.add_constraint({{x, 2}, {y, 2}}, RowOp::LessEq, 3);
    m.set_objective({{x, 1}, {y, 1}}, Sense::Maximize);
    CHECK(solve_lp(m).objective == doctest::Approx(1.5));
    Solution s = solve(m);
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.objective == doctest::Approx(1));
}

TEST_CASE("binary columns get [0,1] bounds") {
    MPModel m;
    int b = m.add_variable(0, 1, VarKind::Binary);
    m.set_objective({{b, 1}}, Sense::Maximize);
    CHECK(solve(m).objective == doctest::Approx(1));
}

TEST_CASE("scratch frames restore rows, bounds and objective") {
    MPModel m;
    int x = m.add_variable(0, 10);
    m.set_objective({{x, 1}}, Sense::Maximize);
    m.push_scratch();
    m.add_constraint({{x, 1}}, RowOp::LessEq, 3);
    m.set_variable_bounds(x, 1, 2);
    m.set_objective({{x, 1}}, Sense::Minimize);
    CHECK(solve_lp(m).objective == doctest::Approx(1));
    m.pop_scratch();
    CHECK(m.num_constraints() == 0);
    CHECK(m.variable(x).ub == 10);
    CHECK(m.sense() == Sense::Maximize);
    CHECK(solve_lp(m).objective == doctest::Approx(10));
    CHECK_THROWS_AS(m.pop_scratch(), ModelError);
}

TEST_CASE("add_term is rejected inside a scratch frame") {
    MPModel m;
    int x = m.add_variable(0, 1);
    int r = m.add_constraint({}, RowOp::LessEq, 1);
    m.add_term(r, x, 1);
    m.push_scratch();
    CHECK_THROWS_AS(m.add_term(r, x, 1), ModelError);
}

TEST_CASE("LP text output") {
    MPModel m;
    int x = m.add_variable(0, 4, VarKind::Integer, "x");
    int y = m.add_variable(-kInf, kInf, VarKind::Continuous, "y");
    m.add_constraint({{x, 1}, {y, -2}}, RowOp::GreaterEq, 1, "c");
    m.set_objective({{x, 1}}, Sense::Minimize);
    const std::string lp = to_lp_format(m);
    CHECK(lp.find("Minimize") != std::string::npos);
    CHECK(lp.find("Subject To") != std::string::npos);
    CHECK(lp.find("c0: x#0 - 2 y#1 >= 1") != std::string::npos);
    CHECK(lp.find("y#1 free") != std::string::npos);
    CHECK(lp.find("General") != std::string::npos);
    CHECK(lp.find("End") != std::string::npos);
}

TEST_CASE("simplex agrees with vertex enumeration on random LPs") {
    std::mt19937 rng(11);
    for (int i = 0; i < 100; ++i) {
        const auto lp = oracle::random_lp(rng, false);
        const auto want = oracle::vertex_enumeration(lp);
        const auto got = solve_lp(oracle::to_model(lp));
        CAPTURE(i);
        REQUIRE(want.feasible == (got.status == Status::Optimal));
        if (want.feasible)
            CHECK(std::abs(want.objective - got.objective) <= 1e-6);
    }
}
