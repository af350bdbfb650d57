#include "lprpg/task.h"

namespace lprpg {

bool is_applicable(const State &s, const GroundAction &a) {
    for (FactId f : a.pre_facts)
        if (!s.has(f))
            return false;
    for (const auto &c : a.pre_num)
        if (!c.holds(s.values))
            return false;
    return true;
}

State apply_unchecked(const State &s, const GroundAction &a) {
    State next = s;
    for (FactId f : a.del_effects)
        next.facts[static_cast<std::size_t>(f)] = false;
    for (FactId f : a.add_effects)
        next.facts[static_cast<std::size_t>(f)] = true;
    // Magnitudes are evaluated in the predecessor state.
    for (const auto &e : a.num_effects) {
        Rational m = e.magnitude.evaluate(s.values);
        Rational &target = next.values[static_cast<std::size_t>(e.variable)];
        switch (e.op) {
        case EffectOp::Increase: target = s.values[static_cast<std::size_t>(e.variable)] + m; break;
        case EffectOp::Decrease: target = s.values[static_cast<std::size_t>(e.variable)] - m; break;
        case EffectOp::Assign: target = m; break;
        }
    }
    return next;
}

State apply(const State &s, const GroundAction &a, const GroundTask &task) {
    for (FactId f : a.pre_facts)
        if (!s.has(f))
            throw PreconditionViolated(a.name + ": precondition " + task.facts[static_cast<std::size_t>(f)].name +
                                       " does not hold");
    for (const auto &c : a.pre_num)
        if (!c.holds(s.values))
            throw PreconditionViolated(a.name + ": precondition " + to_string(c, task) + " does not hold");
    return apply_unchecked(s, a);
}

bool is_goal(const State &s, const GroundTask &task) {
    for (FactId f : task.goal_facts)
        if (!s.has(f))
            return false;
    for (const auto &c : task.goal_num)
        if (!c.holds(s.values))
            return false;
    return true;
}

namespace {

// LCM of the denominators the condition's expression can take over any
// reachable state, or 0 when some affecting effect is not a constant.
std::int64_t value_lattice(const NumericCondition &c, const GroundTask &task) {
    std::int64_t l = c.rhs.denominator();
    for (const auto &[v, w] : c.expr.coefficients()) {
        l = lcm(l, (w * task.initial.values[static_cast<std::size_t>(v)]).denominator());
        for (const auto &a : task.actions) {
            const NumericEffect *e = a.effect_on(v);
            if (!e)
                continue;
            if (!e->magnitude.is_constant())
                return 0;
            l = lcm(l, (w * e->magnitude.constant()).denominator());
        }
    }
    return l;
}

void rewrite(NumericCondition &c, const GroundTask &task, std::vector<std::string> &flags) {
    if (c.op != CmpOp::Greater && c.op != CmpOp::Less)
        return;
    std::int64_t l = value_lattice(c, task);
    if (l == 0) {
        flags.push_back(to_string(c, task));
        return;
    }
    Rational eps(1, l);
    if (c.op == CmpOp::Greater) {
        c.op = CmpOp::GreaterEq;
        c.rhs += eps;
    } else {
        c.op = CmpOp::LessEq;
        c.rhs -= eps;
    }
}

}  // namespace

GroundTask rewrite_strict_inequalities(const GroundTask &task) {
    GroundTask out = task;
    std::vector<std::string> flags;
    for (auto &a : out.actions)
        for (auto &c : a.pre_num)
            rewrite(c, task, flags);
    for (auto &c : out.goal_num)
        rewrite(c, task, flags);
    out.unrewritable_strict.insert(out.unrewritable_strict.end(), flags.begin(), flags.end());
    return out;
}

}  // namespace lprpg
