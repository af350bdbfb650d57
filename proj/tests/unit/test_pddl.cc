#include "doctest.h"
#include "fixtures.h"
#include "lprpg/pddl.h"

using namespace lprpg;

namespace {

const char *kDomain = R"((define (domain d)
  (:requirements :strips :typing :numeric-fluents)
  (:types place)
  (:predicates (at ?p - place) (road ?a ?b - place))
  (:functions (fuel) (cost ?a ?b - place))
  (:action go
    :parameters (?a ?b - place)
    :precondition (and (at ?a) (road ?a ?b) (>= (fuel) (cost ?a ?b)))
    :effect (and (not (at ?a)) (at ?b) (decrease (fuel) (cost ?a ?b)))))
)";

const char *kProblem = R"((define (problem p) (:domain d)
  (:objects x y z - place)
  (:init (at x) (road x y) (road y z) (= (fuel) 5) (= (cost x y) 2) (= (cost y z) 1))
  (:goal (at z)))
)";

}  // namespace

TEST_CASE("a predicate named at is an ordinary predicate") {
    auto t = load_text(kDomain, kProblem);
    const auto &task = t->task.task;
    // Static road facts prune the bindings down to the two real roads.
    CHECK(task.actions.size() == 2);
    CHECK(task.variables.size() == 1);
    const auto &go = task.action(t->action("(go x y)"));
    REQUIRE(go.pre_num.size() == 1);
    CHECK(to_string(go.pre_num[0], task) == "(fuel) >= 2");
    CHECK(go.num_effects[0].constant_delta() == Rational(-2));
}

TEST_CASE("parse errors carry a position") {
    try {
        pddl::parse_domain("(define (domain d)\n  (:predicates (p)\n");
        FAIL("no error");
    } catch (const ParseError &e) {
        CHECK(e.line() >= 2);
    }
}

TEST_CASE("unsupported constructs are named") {
    const std::string dom = R"((define (domain d) (:predicates (p) (q))
      (:action a :parameters () :precondition (or (p) (q)) :effect (p))))";
    CHECK_THROWS_AS(pddl::parse_domain(dom), UnsupportedConstruct);
    const std::string timed = R"((define (domain d) (:predicates (p))
      (:action a :parameters () :precondition (at start (p)) :effect (p))))";
    CHECK_THROWS_AS(pddl::parse_domain(timed), UnsupportedConstruct);
}

TEST_CASE("semantic problems are input errors") {
    const auto d = pddl::parse_domain(kDomain);
    CHECK_THROWS_AS(pddl::parse_problem("(define (problem p) (:domain d) (:objects x - place) (:init (at w)) (:goal (at x)))", d),
                    InputError);
    // fuel has no initial value
    CHECK_THROWS_AS(ground(d, pddl::parse_problem(
                                  "(define (problem p) (:domain d) (:objects x - place) (:init (at x)) (:goal (at x)))", d)),
                    InputError);
}

TEST_CASE("bundled fixtures load") {
    for (const char *name : {"pc-fragment", "crt", "crt-producer", "five-cart", "helpful-distortion",
                             "resource-persistence", "pump"}) {
        CAPTURE(name);
        CHECK_NOTHROW(load_fixture(name));
    }
    auto five = load_fixture("five-cart");
    int loads = 0;
    for (const auto &a : five->task.task.actions)
        loads += a.name.rfind("(load", 0) == 0;
    CHECK(loads == 10);
}
