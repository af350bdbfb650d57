#include "brute_force.h"

#include <deque>
#include <set>

namespace oracle {

using lprpg::Rational;

bool SimState::operator<(const SimState &o) const {
    if (facts != o.facts)
        return facts < o.facts;
    return values < o.values;
}

SimState initial(const lprpg::GroundTask &task) { return {task.initial.facts, task.initial.values}; }

namespace {

Rational eval(const lprpg::LinearExpr &e, const SimState &s) {
    Rational r = e.constant();
    for (const auto &[v, w] : e.coefficients())
        r += w * s.values[static_cast<std::size_t>(v)];
    return r;
}

bool holds(const lprpg::NumericCondition &c, const SimState &s) {
    const Rational x = eval(c.expr, s);
    switch (c.op) {
    case lprpg::CmpOp::LessEq: return x <= c.rhs;
    case lprpg::CmpOp::Less: return x < c.rhs;
    case lprpg::CmpOp::Equal: return x == c.rhs;
    case lprpg::CmpOp::Greater: return x > c.rhs;
    case lprpg::CmpOp::GreaterEq: return x >= c.rhs;
    }
    return false;
}

}  // namespace

bool applicable(const lprpg::GroundAction &a, const SimState &s) {
    for (auto f : a.pre_facts)
        if (!s.facts[static_cast<std::size_t>(f)])
            return false;
    for (const auto &c : a.pre_num)
        if (!holds(c, s))
            return false;
    return true;
}

SimState successor(const lprpg::GroundAction &a, const SimState &s) {
    SimState n = s;
    for (auto f : a.del_effects)
        n.facts[static_cast<std::size_t>(f)] = false;
    for (auto f : a.add_effects)
        n.facts[static_cast<std::size_t>(f)] = true;
    for (const auto &e : a.num_effects) {
        const Rational m = eval(e.magnitude, s);
        Rational &v = n.values[static_cast<std::size_t>(e.variable)];
        switch (e.op) {
        case lprpg::EffectOp::Increase: v = s.values[static_cast<std::size_t>(e.variable)] + m; break;
        case lprpg::EffectOp::Decrease: v = s.values[static_cast<std::size_t>(e.variable)] - m; break;
        case lprpg::EffectOp::Assign: v = m; break;
        }
    }
    return n;
}

bool goal(const lprpg::GroundTask &task, const SimState &s) {
    for (auto f : task.goal_facts)
        if (!s.facts[static_cast<std::size_t>(f)])
            return false;
    for (const auto &c : task.goal_num)
        if (!holds(c, s))
            return false;
    return true;
}

BfsResult shortest_plan(const lprpg::GroundTask &task, long max_states) {
    BfsResult r;
    std::set<SimState> seen;
    std::deque<std::pair<SimState, int>> q;
    q.emplace_back(initial(task), 0);
    seen.insert(q.front().first);
    while (!q.empty()) {
        auto [s, d] = q.front();
        q.pop_front();
        ++r.states;
        if (goal(task, s)) {
            r.solved = true;
            r.length = d;
            return r;
        }
        for (const auto &a : task.actions) {
            if (!applicable(a, s))
                continue;
            SimState n = successor(a, s);
            if (seen.insert(n).second) {
                if (static_cast<long>(seen.size()) > max_states)
                    return r;
                q.emplace_back(std::move(n), d + 1);
            }
        }
    }
    r.exhaustive = true;
    return r;
}

namespace {

void dfs(const lprpg::GroundTask &task, const SimState &s, int left, std::vector<lprpg::ActionId> &prefix,
         std::vector<std::vector<lprpg::ActionId>> &out, std::size_t cap) {
    if (out.size() >= cap)
        return;
    if (goal(task, s))
        out.push_back(prefix);
    if (left == 0)
        return;
    for (const auto &a : task.actions) {
        if (!applicable(a, s))
            continue;
        prefix.push_back(a.id);
        dfs(task, successor(a, s), left - 1, prefix, out, cap);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<std::vector<lprpg::ActionId>> enumerate_plans(const lprpg::GroundTask &task, int max_len,
                                                         std::size_t cap) {
    std::vector<std::vector<lprpg::ActionId>> out;
    std::vector<lprpg::ActionId> prefix;
    dfs(task, initial(task), max_len, prefix, out, cap);
    return out;
}

bool plan_valid(const lprpg::GroundTask &task, const std::vector<lprpg::ActionId> &plan) {
    SimState s = initial(task);
    for (auto id : plan) {
        if (id < 0 || static_cast<std::size_t>(id) >= task.actions.size())
            return false;
        const auto &a = task.actions[static_cast<std::size_t>(id)];
        if (!applicable(a, s))
            return false;
        s = successor(a, s);
    }
    return goal(task, s);
}

}  // namespace oracle
