#include "lprpg/rpg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lprpg {

Interval expr_range(const LinearExpr &expr, const Box &box) {
    Interval r{expr.constant(), expr.constant()};
    for (const auto &[v, w] : expr.coefficients()) {
        const Interval &b = box[static_cast<std::size_t>(v)];
        if (w > 0) {
            r.lb = r.lb + b.lb * w;
            r.ub = r.ub + b.ub * w;
        } else {
            r.lb = r.lb + b.ub * w;
            r.ub = r.ub + b.lb * w;
        }
    }
    return r;
}

bool satisfiable(const NumericCondition &c, const Box &box) {
    const Interval r = expr_range(c.expr, box);
    const ExtRational rhs = c.rhs;
    switch (c.op) {
    case CmpOp::GreaterEq: return r.ub >= rhs;
    case CmpOp::Greater: return r.ub > rhs;
    case CmpOp::LessEq: return r.lb <= rhs;
    case CmpOp::Less: return r.lb < rhs;
    case CmpOp::Equal: return r.lb <= rhs && rhs <= r.ub;
    }
    return false;
}

bool RPGraph::has_fact(FactId f, int layer) const {
    const int l = fact_layer[static_cast<std::size_t>(f)];
    return l >= 0 && l <= layer;
}

bool RPGraph::has_action(ActionId a, int layer) const {
    const int l = action_layer[static_cast<std::size_t>(a)];
    return l >= 0 && l <= layer;
}

int RPGraph::condition_layer(const NumericCondition &c) const {
    for (std::size_t i = 0; i < bounds.size(); ++i)
        if (satisfiable(c, bounds[i]))
            return static_cast<int>(i);
    return -1;
}

std::vector<ActionId> RPGraph::actions_up_to(int layer) const {
    std::vector<ActionId> out;
    for (int l = 1; l <= layer && l < static_cast<int>(new_actions.size()); ++l)
        out.insert(out.end(), new_actions[static_cast<std::size_t>(l)].begin(),
                   new_actions[static_cast<std::size_t>(l)].end());
    std::sort(out.begin(), out.end());
    return out;
}

std::string RPGraph::dump(const GroundTask &task) const {
    std::ostringstream os;
    os << "status " << (status == RPGStatus::GoalsReached ? "goals-reached" : "relaxed-unsolvable")
       << " final-layer " << final_layer << (hit_layer_cap ? " (layer cap)" : "") << "\n";
    for (int l = 0; l < static_cast<int>(bounds.size()); ++l) {
        if (l > 0 && l < static_cast<int>(new_actions.size())) {
            os << "A(" << l << "):";
            for (ActionId a : new_actions[static_cast<std::size_t>(l)])
                os << " " << task.action(a).name;
            os << "\n";
        }
        os << "FP(" << l << "):";
        for (std::size_t f = 0; f < fact_layer.size(); ++f)
            if (fact_layer[f] == l)
                os << " " << task.facts[f].name;
        os << "\nFV(" << l << "):";
        for (std::size_t v = 0; v < task.num_variables(); ++v)
            os << " " << task.variables[v] << "=[" << bounds[static_cast<std::size_t>(l)][v].lb << ","
               << bounds[static_cast<std::size_t>(l)][v].ub << "]";
        os << "\n";
    }
    return os.str();
}

namespace {

constexpr double kInfCost = std::numeric_limits<double>::infinity();

// Which direction of change on each variable can help some condition.
struct Usefulness {
    std::vector<std::vector<const NumericCondition *>> up, down;
};

Usefulness usefulness(const GroundTask &task) {
    Usefulness u;
    u.up.resize(task.num_variables());
    u.down.resize(task.num_variables());
    auto note = [&](const NumericCondition &c) {
        for (const auto &[v, w] : c.expr.coefficients()) {
            const auto i = static_cast<std::size_t>(v);
            const bool wants_large = c.op == CmpOp::GreaterEq || c.op == CmpOp::Greater;
            const bool wants_small = c.op == CmpOp::LessEq || c.op == CmpOp::Less;
            if (c.op == CmpOp::Equal || (wants_large && w > 0) || (wants_small && w < 0))
                u.up[i].push_back(&c);
            if (c.op == CmpOp::Equal || (wants_large && w < 0) || (wants_small && w > 0))
                u.down[i].push_back(&c);
        }
    };
    for (const auto &a : task.actions)
        for (const auto &c : a.pre_num)
            note(c);
    for (const auto &c : task.goal_num)
        note(c);
    return u;
}

// Single-variable precondition v <= d (upper) or v >= d (lower) on an
// action, if that is the only precondition mentioning v.
std::optional<Rational> own_limit(const GroundAction &a, VarId v, bool upper) {
    std::optional<Rational> out;
    int count = 0;
    for (const auto &c : a.pre_num) {
        if (!c.mentions(v))
            continue;
        ++count;
        if (!c.is_single_variable())
            return std::nullopt;
        const Rational w = c.expr.coefficient(v);
        CmpOp op = w < 0 ? mirror(c.op) : c.op;
        const Rational d = c.rhs / w;
        if (upper && (op == CmpOp::LessEq || op == CmpOp::Less))
            out = d;
        else if (!upper && (op == CmpOp::GreaterEq || op == CmpOp::Greater))
            out = d;
    }
    if (count != 1)
        return std::nullopt;
    return out;
}

// Next layer's bounds under interval arithmetic: every action in the layer
// applies once (or, with unbounded set, any number of times).
Box interval_step(const GroundTask &task, const Box &prev, const std::vector<ActionId> &layer_actions, bool unbounded) {
    Box next = prev;
    std::vector<ExtRational> up(task.num_variables(), ExtRational(0)), down(task.num_variables(), ExtRational(0));
    std::vector<std::optional<Interval>> assigned(task.num_variables());
    for (ActionId id : layer_actions) {
        const auto &a = task.action(id);
        for (const auto &e : a.num_effects) {
            const auto v = static_cast<std::size_t>(e.variable);
            const Interval m = expr_range(e.magnitude, prev);
            if (e.op == EffectOp::Assign) {
                if (!assigned[v])
                    assigned[v] = m;
                else
                    assigned[v] = Interval{min(assigned[v]->lb, m.lb), max(assigned[v]->ub, m.ub)};
                continue;
            }
            // Signed range of the change.
            Interval d = e.op == EffectOp::Increase ? m : Interval{-m.ub, -m.lb};
            if (d.ub > ExtRational(0)) {
                if (!unbounded) {
                    up[v] = up[v] + d.ub;
                } else {
                    auto lim = e.magnitude.is_constant() ? own_limit(a, e.variable, true) : std::nullopt;
                    if (lim)
                        next[v].ub = max(next[v].ub, ExtRational(*lim) + d.ub);
                    else
                        up[v] = ExtRational::pos_inf();
                }
            }
            if (d.lb < ExtRational(0)) {
                if (!unbounded) {
                    down[v] = down[v] + d.lb;
                } else {
                    auto lim = e.magnitude.is_constant() ? own_limit(a, e.variable, false) : std::nullopt;
                    if (lim)
                        next[v].lb = min(next[v].lb, ExtRational(*lim) + d.lb);
                    else
                        down[v] = ExtRational::neg_inf();
                }
            }
        }
    }
    for (std::size_t v = 0; v < next.size(); ++v) {
        next[v].ub = max(next[v].ub, prev[v].ub + up[v]);
        next[v].lb = min(next[v].lb, prev[v].lb + down[v]);
        if (assigned[v]) {
            next[v].lb = min(next[v].lb, assigned[v]->lb);
            next[v].ub = max(next[v].ub, assigned[v]->ub);
        }
    }
    return next;
}

bool entry_ok(const GroundAction &a, const RPGraph &g, int layer, const Box &box) {
    for (FactId f : a.pre_facts)
        if (!g.has_fact(f, layer))
            return false;
    for (const auto &c : a.pre_num)
        if (!satisfiable(c, box))
            return false;
    return true;
}

// Has some extreme of an unsatisfied condition moved between two boxes?
bool progress_on(const NumericCondition &c, const Box &before, const Box &after) {
    if (satisfiable(c, before))
        return false;
    const Interval r0 = expr_range(c.expr, before), r1 = expr_range(c.expr, after);
    switch (c.op) {
    case CmpOp::GreaterEq:
    case CmpOp::Greater: return r1.ub != r0.ub;
    case CmpOp::LessEq:
    case CmpOp::Less: return r1.lb != r0.lb;
    case CmpOp::Equal: return r1.ub != r0.ub || r1.lb != r0.lb;
    }
    return false;
}

void cost_step(RPGraph &g, const GroundTask &task, CostVariant variant, int t) {
    const auto ts = static_cast<std::size_t>(t);
    if (g.fact_cost.size() <= ts) {
        g.fact_cost.resize(ts + 1);
        g.action_cost.resize(ts + 1);
    }
    if (t == 0) {
        g.fact_cost[0].assign(task.num_facts(), kInfCost);
        for (std::size_t f = 0; f < task.num_facts(); ++f)
            if (g.fact_layer[f] == 0)
                g.fact_cost[0][f] = 0;
        g.action_cost[0].assign(task.actions.size(), kInfCost);
        return;
    }
    const auto &prev = g.fact_cost[ts - 1];
    auto &fc = g.fact_cost[ts];
    auto &ac = g.action_cost[ts];
    fc = prev;
    ac.assign(task.actions.size(), kInfCost);
    for (const auto &a : task.actions) {
        if (!g.has_action(a.id, t))
            continue;
        double c = 0;
        for (FactId p : a.pre_facts) {
            const double pc = prev[static_cast<std::size_t>(p)];
            c = variant == CostVariant::Max ? std::max(c, pc) : c + pc;
        }
        ac[static_cast<std::size_t>(a.id)] = c;
        for (FactId p : a.add_effects)
            fc[static_cast<std::size_t>(p)] = std::min(fc[static_cast<std::size_t>(p)], c + 1);
    }
}

class Expander {
public:
    Expander(const State &state, const ExpandInput &in, const HeuristicConfig &config)
        : state_(state), in_(in), task_(in.task->task), pc_(in.task->pc), config_(config),
          useful_(usefulness(task_)) {}

    RPGraph run() {
        RPGraph g;
        g.fact_layer.assign(task_.num_facts(), -1);
        g.action_layer.assign(task_.actions.size(), -1);
        for (std::size_t f = 0; f < task_.num_facts(); ++f)
            if (state_.facts[f])
                g.fact_layer[f] = 0;
        Box b0;
        for (const auto &x : state_.values)
            b0.push_back({x, x});
        g.bounds.push_back(std::move(b0));
        g.new_actions.emplace_back();
        const bool lp = config_.uses_lp();
        const bool costs = config_.weight != WeightScheme::Layer && lp;
        const CostVariant variant = config_.weight == WeightScheme::HMax ? CostVariant::Max : CostVariant::Sum;
        if (lp)
            g.flow = std::make_unique<FlowModel>(task_, pc_, state_, config_, in_.stats);
        if (costs)
            cost_step(g, task_, variant, 0);

        for (int i = 0;; ++i) {
            if (goals_reached(g, i)) {
                g.status = RPGStatus::GoalsReached;
                g.final_layer = i;
                return g;
            }
            if (i >= config_.max_layers) {
                g.hit_layer_cap = true;
                g.status = RPGStatus::RelaxedUnsolvable;
                g.final_layer = i;
                return g;
            }
            const Box &prev = g.bounds.back();
            std::vector<ActionId> fresh;
            for (const auto &a : task_.actions)
                if (g.action_layer[static_cast<std::size_t>(a.id)] < 0 && entry_ok(a, g, i, prev))
                    fresh.push_back(a.id);
            for (ActionId a : fresh) {
                g.action_layer[static_cast<std::size_t>(a)] = i + 1;
                for (FactId f : task_.action(a).add_effects)
                    if (g.fact_layer[static_cast<std::size_t>(f)] < 0)
                        g.fact_layer[static_cast<std::size_t>(f)] = i + 1;
            }
            g.new_actions.push_back(fresh);
            if (lp)
                g.flow->add_actions(fresh, i + 1);
            Box next = next_bounds(g, i + 1);
            bool progress = !fresh.empty();
            if (!progress) {
                for (const auto &a : task_.actions) {
                    if (g.action_layer[static_cast<std::size_t>(a.id)] >= 0)
                        continue;
                    for (const auto &c : a.pre_num)
                        if (progress_on(c, prev, next)) {
                            progress = true;
                            break;
                        }
                    if (progress)
                        break;
                }
                for (const auto &c : task_.goal_num)
                    progress = progress || progress_on(c, prev, next);
            }
            if (!progress) {
                g.new_actions.pop_back();
                g.status = RPGStatus::RelaxedUnsolvable;
                g.final_layer = i;
                return g;
            }
            g.bounds.push_back(std::move(next));
            if (costs)
                cost_step(g, task_, variant, i + 1);
        }
    }

private:
    bool goals_reached(RPGraph &g, int i) {
        for (FactId f : task_.goal_facts)
            if (!g.has_fact(f, i))
                return false;
        for (const auto &c : task_.goal_num)
            if (!satisfiable(c, g.bounds[static_cast<std::size_t>(i)]))
                return false;
        if (!config_.uses_lp() || !config_.goal_rows() || is_goal(state_, task_))
            return true;
        static const LandmarkSet no_landmarks;
        static const std::vector<bool> none;
        const LandmarkSet &lms = in_.landmarks ? *in_.landmarks : no_landmarks;
        const std::vector<bool> &achieved = in_.achieved ? *in_.achieved : none;
        FlowModel &fm = *g.flow;
        g.final_layer = i;
        fm.push();
        fm.add_goal_constraints(lms, achieved);
        fm.set_objective(action_weights(g, config_, i));
        fm.apply_integrality(config_.ints, integrality_context(g, task_, pc_, lms, achieved, state_));
        mp::Solution s = fm.solve(true);
        fm.pop();
        if (s.status == mp::Status::Infeasible)
            return false;
        if (!s.values.empty())
            g.goal_solution = std::move(s);
        return true;
    }

    Box next_bounds(const RPGraph &g, int layer) {
        const Box &prev = g.bounds.back();
        const std::vector<ActionId> acts = g.actions_up_to(layer);
        const bool unbounded = config_.kind == HeuristicKind::LPRPGFF;
        Box next = interval_step(task_, prev, acts, unbounded);
        if (!config_.uses_lp())
            return next;
        FlowModel &fm = *g.flow;
        for (std::size_t v = 0; v < task_.num_variables(); ++v) {
            const VarId var = static_cast<VarId>(v);
            if (!fm.tracked(var))
                continue;
            bool inc = false, dec = false;
            for (ActionId a : acts) {
                const Rational d = pc_.delta(var, a);
                inc = inc || d > 0;
                dec = dec || d < 0;
            }
            Interval r = prev[v];
            if (inc && !side_satisfied(useful_.up[v], prev))
                r.ub = min(next[v].ub, fm.query_bound(var, true, prev[v].ub));
            if (dec && !side_satisfied(useful_.down[v], prev))
                r.lb = max(next[v].lb, fm.query_bound(var, false, prev[v].lb));
            next[v] = r;
        }
        return next;
    }

    bool side_satisfied(const std::vector<const NumericCondition *> &conds, const Box &box) const {
        if (!config_.reuse_satisfied_bounds)
            return false;
        return std::all_of(conds.begin(), conds.end(), [&](const NumericCondition *c) { return satisfiable(*c, box); });
    }

    const State &state_;
    const ExpandInput &in_;
    const GroundTask &task_;
    const PCClassification &pc_;
    const HeuristicConfig &config_;
    Usefulness useful_;
};

}  // namespace

RPGraph expand(const State &state, const ExpandInput &in, const HeuristicConfig &config) {
    return Expander(state, in, config).run();
}

void propagate_costs(RPGraph &g, const GroundTask &task, CostVariant variant) {
    g.fact_cost.clear();
    g.action_cost.clear();
    for (int t = 0; t <= g.final_layer; ++t)
        cost_step(g, task, variant, t);
}

std::vector<double> action_weights(const RPGraph &g, const HeuristicConfig &config, int cost_layer) {
    std::vector<double> w(g.action_layer.size(), 0.0);
    for (std::size_t a = 0; a < w.size(); ++a) {
        const int l = g.action_layer[a];
        if (l < 0)
            continue;
        if (config.weight == WeightScheme::Layer) {
            w[a] = std::pow(config.layer_k, l);
        } else {
            double c = 0;
            if (!g.action_cost.empty()) {
                const auto t = static_cast<std::size_t>(std::min<int>(cost_layer, static_cast<int>(g.action_cost.size()) - 1));
                c = g.action_cost[t][a];
            }
            w[a] = 1 + (std::isinf(c) ? 0 : c);
        }
    }
    return w;
}

IntegralityContext integrality_context(const RPGraph &g, const GroundTask &task, const PCClassification &pc,
                                       const LandmarkSet &landmarks, const std::vector<bool> &achieved,
                                       const State &state) {
    IntegralityContext ctx;
    const std::size_t n = task.actions.size();
    ctx.first_layer.assign(n, false);
    ctx.goal_achievers.assign(n, false);
    ctx.num_goal_affectors.assign(n, false);
    std::vector<bool> wanted(task.num_facts(), false);
    for (FactId f : task.goal_facts)
        if (!state.has(f))
            wanted[static_cast<std::size_t>(f)] = true;
    for (std::size_t i = 0; i < landmarks.size(); ++i)
        if (i >= achieved.size() || !achieved[i])
            for (FactId f : landmarks.landmarks[i].facts)
                if (!state.has(f))
                    wanted[static_cast<std::size_t>(f)] = true;
    std::vector<bool> goal_var(task.num_variables(), false);
    for (const auto &c : task.goal_num)
        for (const auto &[v, w] : c.expr.coefficients())
            goal_var[static_cast<std::size_t>(v)] = true;
    for (const auto &a : task.actions) {
        const auto i = static_cast<std::size_t>(a.id);
        ctx.first_layer[i] = g.action_layer[i] == 1;
        ctx.goal_achievers[i] = std::any_of(a.add_effects.begin(), a.add_effects.end(),
                                            [&](FactId f) { return wanted[static_cast<std::size_t>(f)]; });
        for (const auto &[v, d] : pc.deltas[i])
            if (goal_var[static_cast<std::size_t>(v)])
                ctx.num_goal_affectors[i] = true;
    }
    return ctx;
}

std::optional<long> sapa_penalty(const State &state, const std::vector<std::pair<ActionId, double>> &plan,
                                 const GroundTask &task, const PCClassification &pc) {
    const std::size_t nv = task.num_variables();
    std::vector<double> cons(nv, 0), prod(nv, 0), best(nv, 0);
    for (const auto &a : task.actions)
        for (const auto &[v, d] : pc.deltas[static_cast<std::size_t>(a.id)])
            if (d > 0)
                best[static_cast<std::size_t>(v)] = std::max(best[static_cast<std::size_t>(v)], to_double(d));
    for (const auto &[a, count] : plan)
        for (const auto &[v, d] : pc.deltas[static_cast<std::size_t>(a)]) {
            const double x = to_double(d) * count;
            if (x < 0)
                cons[static_cast<std::size_t>(v)] -= x;
            else
                prod[static_cast<std::size_t>(v)] += x;
        }
    long penalty = 0;
    for (std::size_t v = 0; v < nv; ++v) {
        const double shortfall = cons[v] - prod[v] - to_double(state.values[v]);
        if (shortfall <= 1e-9)
            continue;
        if (best[v] <= 0)
            return std::nullopt;
        penalty += static_cast<long>(std::ceil(shortfall / best[v] - 1e-9));
    }
    return penalty;
}

}  // namespace lprpg
