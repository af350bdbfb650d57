#include "lprpg/flow_model.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace lprpg {

namespace {

class Stopwatch {
public:
    explicit Stopwatch(double *sink) : sink_(sink), start_(std::chrono::steady_clock::now()) {}
    ~Stopwatch() {
        if (sink_)
            *sink_ += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    double *sink_;
    std::chrono::steady_clock::time_point start_;
};

double to_bound(const ExtRational &x) {
    if (x.is_pos_inf())
        return mp::kInf;
    if (x.is_neg_inf())
        return -mp::kInf;
    return x.to_double();
}

mp::RowOp row_op(CmpOp op) {
    switch (op) {
    case CmpOp::LessEq:
    case CmpOp::Less: return mp::RowOp::LessEq;
    case CmpOp::Equal: return mp::RowOp::Equal;
    default: return mp::RowOp::GreaterEq;
    }
}

}  // namespace

FlowModel::FlowModel(const GroundTask &task, const PCClassification &pc, const State &state,
                     const HeuristicConfig &config, LPStats *stats)
    : task_(task), pc_(pc), state_(state), config_(config), stats_(stats) {
    Stopwatch sw(stats_ ? &stats_->build_ms : nullptr);
    const std::size_t nv = task.num_variables();
    post_.assign(nv, -1);
    up_.assign(nv, -1);
    down_.assign(nv, -1);
    flow_row_.assign(nv, -1);
    up_row_.assign(nv, -1);
    down_row_.assign(nv, -1);
    column_.assign(task.actions.size(), -1);
    layer_.assign(task.actions.size(), -1);

    std::vector<bool> tracked(nv, false);
    auto mark = [&](const NumericCondition &c) {
        for (const auto &[v, w] : c.expr.coefficients())
            tracked[static_cast<std::size_t>(v)] = true;
    };
    for (const auto &a : task.actions)
        for (const auto &c : a.pre_num)
            mark(c);
    for (const auto &c : task.goal_num)
        mark(c);

    for (std::size_t v = 0; v < nv; ++v) {
        if (!tracked[v])
            continue;
        const auto &vc = pc.vars[v];
        const ExtRational s = state.values[v];
        double lb = to_bound(min(vc.lb, s));
        double ub = to_bound(max(vc.ub, s));
        if (vc.status == VarStatus::NonConforming)
            lb = -mp::kInf, ub = mp::kInf;
        const double sv = to_double(state.values[v]);
        post_[v] = model_.add_variable(lb, ub, mp::VarKind::Continuous, task.variables[v] + "'");
        flow_row_[v] = model_.add_constraint({{post_[v], 1.0}}, mp::RowOp::Equal, sv, "flow");
    }

    // Catalytic groups not already satisfied in the state.
    switch_.assign(pc.catalytic.size(), -1);
    cat_count_row_.assign(pc.catalytic.size(), -1);
    for (std::size_t g = 0; g < pc.catalytic.size(); ++g) {
        const auto &cond = pc.catalytic[g].condition;
        const Rational here = cond.expr.evaluate(state.values);
        if (here >= cond.rhs)
            continue;
        for (const auto &[v, w] : cond.expr.coefficients()) {
            const auto i = static_cast<std::size_t>(v);
            const double sv = to_double(state.values[i]);
            if (w > 0 && up_[i] < 0) {
                up_[i] = model_.add_variable(-mp::kInf, mp::kInf, mp::VarKind::Continuous, task.variables[i] + "_up");
                up_row_[i] = model_.add_constraint({{up_[i], 1.0}}, mp::RowOp::Equal, sv, "up");
            }
            if (w < 0 && down_[i] < 0) {
                down_[i] = model_.add_variable(-mp::kInf, mp::kInf, mp::VarKind::Continuous, task.variables[i] + "_down");
                down_row_[i] = model_.add_constraint({{down_[i], 1.0}}, mp::RowOp::Equal, sv, "down");
            }
        }
        const int s = model_.add_variable(0, 1, mp::VarKind::Binary, "s" + std::to_string(g));
        switch_[g] = s;
        // N.s - sum C_a >= 0, filled in as members arrive.
        cat_count_row_[g] = model_.add_constraint({}, mp::RowOp::GreaterEq, 0, "cat_count");
        // expr_up - (c - L) s >= L
        mp::Terms t;
        for (const auto &[v, w] : cond.expr.coefficients()) {
            const auto i = static_cast<std::size_t>(v);
            t.emplace_back(w > 0 ? up_[i] : down_[i], to_double(w));
        }
        const double L = to_double(here);
        t.emplace_back(s, -(to_double(cond.rhs) - L));
        model_.add_constraint(std::move(t), mp::RowOp::GreaterEq, L, "cat_trigger");
    }

    one_shot_row_.assign(pc.one_shot.size(), -1);
    for (std::size_t i = 0; i < pc.one_shot.size(); ++i)
        if (state.has(pc.one_shot[i].fact))
            one_shot_row_[i] = model_.add_constraint({}, mp::RowOp::LessEq, 1.0, "one_shot");
}

double FlowModel::action_upper(ActionId a) const {
    const auto ai = static_cast<std::size_t>(a);
    Rational u = pc_.count_bound.empty() ? Rational(static_cast<std::int64_t>(config_.count_cap)) : pc_.count_bound[ai];
    u = std::min(u, Rational(static_cast<std::int64_t>(config_.count_cap)));
    // Tighten with the state's remaining stock of never-produced resources.
    for (const auto &[w, d] : pc_.deltas[ai]) {
        const auto &wc = pc_.vars[static_cast<std::size_t>(w)];
        if (d >= 0 || !wc.prod.empty() || wc.status == VarStatus::NonConforming || !wc.lb.is_finite())
            continue;
        Rational avail = state_.values[static_cast<std::size_t>(w)] - wc.lb.value();
        u = std::min(u, avail < 0 ? Rational(0) : avail / -d);
    }
    return to_double(u);
}

void FlowModel::add_actions(const std::vector<ActionId> &actions, int layer) {
    Stopwatch sw(stats_ ? &stats_->build_ms : nullptr);
    for (ActionId a : actions) {
        const auto ai = static_cast<std::size_t>(a);
        if (column_[ai] >= 0)
            continue;
        const auto &act = task_.action(a);
        for (const auto &e : act.num_effects) {
            const auto v = static_cast<std::size_t>(e.variable);
            if (post_[v] >= 0 && pc_.vars[v].status == VarStatus::NonConforming)
                throw std::logic_error("action " + act.name + " affects non-conforming variable " + task_.variables[v]);
        }
        const double ub = action_upper(a);
        const int col = model_.add_variable(0, ub, mp::VarKind::Continuous, act.name);
        column_[ai] = col;
        layer_[ai] = layer;
        actions_.push_back(a);
        for (const auto &[v, d] : pc_.deltas[ai]) {
            const auto vi = static_cast<std::size_t>(v);
            const double dd = to_double(d);
            if (flow_row_[vi] >= 0)
                model_.add_term(flow_row_[vi], col, -dd);
            if (up_row_[vi] >= 0 && dd > 0)
                model_.add_term(up_row_[vi], col, -dd);
            if (down_row_[vi] >= 0 && dd < 0)
                model_.add_term(down_row_[vi], col, -dd);
        }
        for (std::size_t g = 0; g < pc_.catalytic.size(); ++g) {
            if (cat_count_row_[g] < 0)
                continue;
            const auto &m = pc_.catalytic[g].members;
            if (!std::binary_search(m.begin(), m.end(), a))
                continue;
            model_.add_term(cat_count_row_[g], switch_[g], ub);
            model_.add_term(cat_count_row_[g], col, -1.0);
        }
        for (std::size_t i = 0; i < pc_.one_shot.size(); ++i) {
            if (one_shot_row_[i] < 0)
                continue;
            const auto &m = pc_.one_shot[i].members;
            if (std::binary_search(m.begin(), m.end(), a))
                model_.add_term(one_shot_row_[i], col, 1.0);
        }
    }
}

void FlowModel::restrict_to_layer(int layer) {
    for (ActionId a : actions_)
        if (layer_[static_cast<std::size_t>(a)] > layer)
            model_.set_variable_bounds(column_[static_cast<std::size_t>(a)], 0, 0);
}

void FlowModel::add_conditions(const std::vector<NumericCondition> &conditions) {
    Stopwatch sw(stats_ ? &stats_->build_ms : nullptr);
    for (const auto &c : conditions) {
        mp::Terms t;
        for (const auto &[v, w] : c.expr.coefficients()) {
            const int col = post_[static_cast<std::size_t>(v)];
            if (col < 0)
                throw std::logic_error("condition over untracked variable " + task_.variables[static_cast<std::size_t>(v)]);
            t.emplace_back(col, to_double(w));
        }
        model_.add_constraint(std::move(t), row_op(c.op), to_double(c.rhs), "cond");
    }
}

void FlowModel::add_goal_constraints(const LandmarkSet &landmarks, const std::vector<bool> &achieved) {
    if (config_.lp_num_goal_conjunct)
        add_conditions(task_.goal_num);
    Stopwatch sw(stats_ ? &stats_->build_ms : nullptr);
    auto achievers_of = [&](const std::vector<FactId> &facts) {
        mp::Terms t;
        for (ActionId a : actions_) {
            const auto &act = task_.action(a);
            if (std::any_of(facts.begin(), facts.end(), [&](FactId f) { return act.adds(f); }))
                t.emplace_back(column_[static_cast<std::size_t>(a)], 1.0);
        }
        return t;
    };
    if (config_.lp_prop_goals)
        for (FactId g : task_.goal_facts)
            if (!state_.has(g))
                model_.add_constraint(achievers_of({g}), mp::RowOp::GreaterEq, 1.0, "goal");
    if (config_.lp_landmarks)
        for (std::size_t i = 0; i < landmarks.size(); ++i) {
            const auto &lm = landmarks.landmarks[i].facts;
            if (i < achieved.size() && achieved[i])
                continue;
            if (std::any_of(lm.begin(), lm.end(), [&](FactId f) { return state_.has(f); }))
                continue;
            model_.add_constraint(achievers_of(lm), mp::RowOp::GreaterEq, 1.0, "landmark");
        }
    if (config_.lp_all_props) {
        std::vector<bool> goal(task_.num_facts(), false);
        for (FactId g : task_.goal_facts)
            goal[static_cast<std::size_t>(g)] = true;
        for (std::size_t f = 0; f < task_.num_facts(); ++f) {
            const FactId fact = static_cast<FactId>(f);
            if (state_.has(fact))
                continue;
            mp::Terms adders = achievers_of({fact});
            mp::Terms requirers;
            double n = 0;
            for (ActionId a : actions_)
                if (task_.action(a).requires_fact(fact)) {
                    const int col = column_[static_cast<std::size_t>(a)];
                    requirers.emplace_back(col, -1.0);
                    n += model_.variable(col).ub;
                }
            if (requirers.empty() && !goal[f])
                continue;
            const int fc = model_.add_variable(goal[f] ? 1 : 0, 1, mp::VarKind::Binary, task_.facts[f].name);
            adders.emplace_back(fc, -1.0);
            model_.add_constraint(std::move(adders), mp::RowOp::GreaterEq, 0, "prop_add");
            if (!requirers.empty()) {
                requirers.emplace_back(fc, n);
                model_.add_constraint(std::move(requirers), mp::RowOp::GreaterEq, 0, "prop_req");
            }
        }
    }
}

void FlowModel::set_objective(const std::vector<double> &action_weight) {
    mp::Terms t;
    for (ActionId a : actions_)
        t.emplace_back(column_[static_cast<std::size_t>(a)], action_weight[static_cast<std::size_t>(a)]);
    model_.set_objective(t, mp::Sense::Minimize);
}

void FlowModel::apply_integrality(IntegralityPolicy policy, const IntegralityContext &context) {
    auto in = [](const std::vector<bool> &set, std::size_t i) { return i < set.size() && set[i]; };
    for (ActionId a : actions_) {
        const auto ai = static_cast<std::size_t>(a);
        bool integral = task_.action(a).assignment_rewritten;
        switch (policy) {
        case IntegralityPolicy::All: integral = true; break;
        case IntegralityPolicy::NumGoal: integral = integral || in(context.num_goal_affectors, ai); [[fallthrough]];
        case IntegralityPolicy::PropGoal: integral = integral || in(context.goal_achievers, ai); [[fallthrough]];
        case IntegralityPolicy::FirstLayer: integral = integral || in(context.first_layer, ai); [[fallthrough]];
        case IntegralityPolicy::Minimal: break;
        }
        if (integral)
            model_.set_variable_kind(column_[ai], mp::VarKind::Integer);
    }
}

mp::Solution FlowModel::solve(bool integral) {
    Stopwatch sw(stats_ ? &stats_->solve_ms : nullptr);
    mp::Solution s = integral ? mp::solve(model_, config_.solver) : mp::solve_lp(model_, config_.solver);
    if (stats_) {
        ++stats_->solves;
        if (s.status == mp::Status::LimitReached)
            ++stats_->limit_hits;
    }
    return s;
}

ExtRational FlowModel::query_bound(VarId v, bool maximize, const ExtRational &previous) {
    const int col = post_[static_cast<std::size_t>(v)];
    if (col < 0)
        throw std::logic_error("bound query on untracked variable " + task_.variables[static_cast<std::size_t>(v)]);
    push();
    if (previous.is_finite())
        model_.add_constraint({{col, 1.0}}, maximize ? mp::RowOp::GreaterEq : mp::RowOp::LessEq,
                              previous.to_double(), "monotone");
    model_.set_objective({{col, 1.0}}, maximize ? mp::Sense::Maximize : mp::Sense::Minimize);
    const mp::Solution s = solve(false);
    pop();
    switch (s.status) {
    case mp::Status::Optimal: return rational_from_double(s.objective);
    case mp::Status::Infeasible:
        // Cannot happen without goal rows; keep the previous bound.
        return previous;
    default: return maximize ? ExtRational::pos_inf() : ExtRational::neg_inf();
    }
}

std::vector<std::pair<ActionId, double>> FlowModel::nonzero_actions(const mp::Solution &s, double tol) const {
    std::vector<std::pair<ActionId, double>> out;
    if (s.values.empty())
        return out;
    for (ActionId a : actions_) {
        const double x = s.values[static_cast<std::size_t>(column_[static_cast<std::size_t>(a)])];
        if (x > tol)
            out.emplace_back(a, x);
    }
    return out;
}

}  // namespace lprpg
