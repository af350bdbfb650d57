#pragma once

// Exhaustive search over a ground task with its own transition code, so
// that search results can be checked without trusting the planner's.

#include "lprpg/task.h"

#include <cstddef>
#include <vector>

namespace oracle {

struct SimState {
    std::vector<bool> facts;
    std::vector<lprpg::Rational> values;
    bool operator<(const SimState &o) const;
    bool operator==(const SimState &o) const = default;
};

SimState initial(const lprpg::GroundTask &task);
bool applicable(const lprpg::GroundAction &a, const SimState &s);
SimState successor(const lprpg::GroundAction &a, const SimState &s);
bool goal(const lprpg::GroundTask &task, const SimState &s);

struct BfsResult {
    bool solved = false;
    int length = -1;
    // The reachable space was fully explored (an unsolved result is a proof).
    bool exhaustive = false;
    long states = 0;
};

BfsResult shortest_plan(const lprpg::GroundTask &task, long max_states = 200000);

// Every action sequence of length <= max_len that is applicable from the
// initial state and ends in a goal state. Stops after cap plans.
std::vector<std::vector<lprpg::ActionId>> enumerate_plans(const lprpg::GroundTask &task, int max_len,
                                                         std::size_t cap = 2000);

// Independent replay of a plan.
bool plan_valid(const lprpg::GroundTask &task, const std::vector<lprpg::ActionId> &plan);

}  // namespace oracle
