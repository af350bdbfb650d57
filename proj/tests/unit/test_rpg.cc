#include "doctest.h"
#include "fixtures.h"
#include "lprpg/rpg.h"

using namespace lprpg;

namespace {

RPGraph graph(const Loaded &t, HeuristicKind kind, LPStats *stats = nullptr) {
    HeuristicConfig c;
    c.kind = kind;
    ExpandInput in{&t.task, &t.landmarks, &t.achieved, stats};
    return expand(t.root(), in, c);
}

Interval iv(std::int64_t lb, std::int64_t ub) { return {ExtRational(lb), ExtRational(ub)}; }

}  // namespace

TEST_CASE("interval arithmetic over boxes") {
    Box box{iv(0, 2), iv(-1, 3)};
    LinearExpr e = LinearExpr::variable(0, Rational(2)) - LinearExpr::variable(1);
    e.add_constant(Rational(1));
    CHECK(expr_range(e, box) == iv(-2, 6));
    auto ge = NumericCondition::make(e, CmpOp::GreaterEq, LinearExpr(Rational(6)));
    CHECK(satisfiable(ge, box));
    auto gt = NumericCondition::make(e, CmpOp::Greater, LinearExpr(Rational(6)));
    CHECK_FALSE(satisfiable(gt, box));
    Box open{{ExtRational::neg_inf(), ExtRational(0)}, iv(0, 0)};
    CHECK(expr_range(LinearExpr::variable(0), open).lb.is_neg_inf());
}

TEST_CASE("two-layer bounds on the producer/consumer fragment") {
    auto t = load_fixture("pc-fragment");
    const auto v0 = static_cast<std::size_t>(t->variable("(v0)"));
    const auto v1 = static_cast<std::size_t>(t->variable("(v1)"));
    RPGraph lp = graph(*t, HeuristicKind::LPRPG);
    RPGraph ff = graph(*t, HeuristicKind::MetricFF);
    REQUIRE(lp.bounds.size() >= 3);
    REQUIRE(ff.bounds.size() >= 3);
    CHECK(lp.bounds[2][v0] == iv(0, 2));
    CHECK(lp.bounds[2][v1] == iv(0, 2));
    CHECK(ff.bounds[2][v0] == iv(0, 4));
    CHECK(ff.bounds[2][v1] == iv(-2, 2));
    CHECK(lp.status == RPGStatus::GoalsReached);
    CHECK(lp.final_layer == 2);
}

TEST_CASE("LP bound queries on the fragment") {
    auto t = load_fixture("pc-fragment");
    HeuristicConfig c;
    FlowModel fm(t->task.task, t->task.pc, t->root(), c);
    std::vector<ActionId> all;
    for (const auto &a : t->task.task.actions)
        all.push_back(a.id);
    fm.add_actions(all, 1);
    const VarId v0 = t->variable("(v0)"), v1 = t->variable("(v1)");
    CHECK(fm.query_bound(v0, true, ExtRational(0)) == ExtRational(2));
    CHECK(fm.query_bound(v1, false, ExtRational(2)) == ExtRational(0));
    // Never tighter than the bound it is given.
    CHECK(fm.query_bound(v0, true, ExtRational(3)) == ExtRational(3));
}

TEST_CASE("graph facts and action layers") {
    auto t = load_fixture("pc-fragment");
    RPGraph g = graph(*t, HeuristicKind::MetricFF);
    // f0 never changes, so grounding compiles it away.
    CHECK_THROWS(t->fact("(f0)"));
    CHECK(g.fact_layer[static_cast<std::size_t>(t->fact("(f1)"))] == 1);
    CHECK(g.fact_layer[static_cast<std::size_t>(t->fact("(f2)"))] == 2);
    CHECK(g.action_layer[static_cast<std::size_t>(t->action("(c)"))] == 1);
    CHECK(g.has_action(t->action("(b)"), 2));
    CHECK_FALSE(g.has_action(t->action("(b)"), 1));
    CHECK(g.dump(t->task.task).find("(f2)") != std::string::npos);
}

TEST_CASE("the pump threshold is out of reach in the LP graph") {
    auto t = load_fixture("pump");
    CHECK(graph(*t, HeuristicKind::LPRPG).status == RPGStatus::RelaxedUnsolvable);
    // Interval bounds let each pump count twice.
    CHECK(graph(*t, HeuristicKind::MetricFF).status == RPGStatus::GoalsReached);
}

TEST_CASE("without producers the CRT goal is LP-unreachable") {
    auto t = load_fixture("crt");
    CHECK(graph(*t, HeuristicKind::LPRPG).status == RPGStatus::RelaxedUnsolvable);
    CHECK(graph(*t, HeuristicKind::MetricFF).status == RPGStatus::GoalsReached);
}

TEST_CASE("LP solve statistics are collected") {
    auto t = load_fixture("crt-producer");
    LPStats stats;
    graph(*t, HeuristicKind::LPRPG, &stats);
    CHECK(stats.solves > 0);
    CHECK(stats.build_ms >= 0);
    CHECK(stats.solve_ms >= 0);
}

TEST_CASE("cost propagation") {
    auto t = load_fixture("crt-producer");
    HeuristicConfig c;
    c.set_weight("hadd");
    ExpandInput in{&t->task, &t->landmarks, &t->achieved, nullptr};
    RPGraph g = expand(t->root(), in, c);
    REQUIRE(!g.fact_cost.empty());
    const auto w = action_weights(g, c, g.final_layer);
    // fell p2 is applicable right away: cost 0, weight 1.
    CHECK(w[static_cast<std::size_t>(t->action("(fell p2)"))] == doctest::Approx(1));
    CHECK(w[static_cast<std::size_t>(t->action("(load v1 p2)"))] > 1);
    HeuristicConfig k;
    k.set_weight("k:3");
    RPGraph g2 = expand(t->root(), in, k);
    const auto w2 = action_weights(g2, k, g2.final_layer);
    CHECK(w2[static_cast<std::size_t>(t->action("(fell p2)"))] == doctest::Approx(3));
}
