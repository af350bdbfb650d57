#include "doctest.h"
#include "fixtures.h"

using namespace lprpg;

TEST_CASE("transport variables are producer-consumer") {
    auto t = load_fixture("crt-producer");
    const auto &pc = t->task.pc;
    const VarId timber = t->variable("(timber p1)");
    CHECK(pc.vars[static_cast<std::size_t>(timber)].status == VarStatus::ProducerConsumer);
    CHECK(pc.vars[static_cast<std::size_t>(timber)].lb == ExtRational(0));
    CHECK(pc.delta(timber, t->action("(load v1 p1)")) == Rational(-1));
    CHECK(pc.delta(timber, t->action("(unload v1 p1)")) == Rational(1));
    CHECK(pc.all_conforming());
}

TEST_CASE("thresholds on unaffected variables form catalytic groups") {
    auto t = load_fixture("pump");
    const auto &pc = t->task.pc;
    REQUIRE(pc.catalytic.size() == 1);
    CHECK(pc.catalytic[0].members == std::vector<ActionId>{t->action("(turn-wheel)")});
}

TEST_CASE("deleting a never-added precondition makes a one-shot set") {
    auto t = load_fixture("helpful-distortion");
    const auto &pc = t->task.pc;
    REQUIRE(pc.one_shot.size() == 1);
    CHECK(pc.one_shot[0].fact == t->fact("(free-hands)"));
    CHECK(pc.one_shot[0].members == std::vector<ActionId>{t->action("(build-cart a)")});
}

TEST_CASE("landmarks follow shared preconditions back from the goal") {
    auto t = load_fixture("helpful-distortion");
    std::vector<FactId> single;
    for (const auto &l : t->landmarks.landmarks)
        if (!l.disjunctive())
            single.push_back(l.facts[0]);
    auto has = [&](const char *f) { return std::count(single.begin(), single.end(), t->fact(f)) > 0; };
    CHECK(has("(cart-at b)"));
    CHECK(has("(has-cart)"));
}

TEST_CASE("goal facts false in a state count as unachieved") {
    auto t = load_fixture("helpful-distortion");
    std::vector<bool> ach = t->achieved;
    State s = t->root();
    s.facts[static_cast<std::size_t>(t->fact("(cart-at b)"))] = true;
    update_achieved(t->landmarks, s, ach);
    s.facts[static_cast<std::size_t>(t->fact("(cart-at b)"))] = false;
    update_achieved(t->landmarks, s, ach);
    for (std::size_t i = 0; i < t->landmarks.size(); ++i)
        if (t->landmarks.landmarks[i].facts == std::vector<FactId>{t->fact("(cart-at b)")})
            CHECK_FALSE(ach[i]);
}

TEST_CASE("the landmark cap scales with the goal count") {
    auto t = load_fixture("pc-fragment");
    LandmarkOptions o;
    o.count_factor = 1;
    CHECK(extract_landmarks(t->task.task, t->root(), o).size() <= 1);
}
