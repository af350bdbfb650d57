#include "lprpg/extract.h"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace lprpg {

std::vector<std::pair<ActionId, double>> HeuristicResult::plan_counts() const {
    std::map<ActionId, double> m;
    for (const auto &e : trace)
        m[e.action] += e.count;
    return {m.begin(), m.end()};
}

HeuristicResult dead_end_result() {
    HeuristicResult r;
    r.h = std::numeric_limits<double>::infinity();
    return r;
}

std::string trace_to_string(const HeuristicResult &r, const GroundTask &task) {
    std::ostringstream os;
    os << "h = " << r.h << "\n";
    for (const auto &e : r.trace)
        os << "  layer " << e.layer << ": " << task.action(e.action).name << " x" << e.count << " (w=" << e.weight
           << ")\n";
    os << "helpful:";
    for (ActionId a : r.helpful)
        os << " " << task.action(a).name;
    os << "\n";
    return os.str();
}

namespace {

// Direction flags per variable: some condition benefits from v going up/down.
std::pair<std::vector<bool>, std::vector<bool>> useful_directions(const GroundTask &task) {
    std::vector<bool> up(task.num_variables(), false), down(task.num_variables(), false);
    auto note = [&](const NumericCondition &c) {
        for (const auto &[v, w] : c.expr.coefficients()) {
            const auto i = static_cast<std::size_t>(v);
            const bool large = c.op == CmpOp::GreaterEq || c.op == CmpOp::Greater;
            const bool small = c.op == CmpOp::LessEq || c.op == CmpOp::Less;
            if (c.op == CmpOp::Equal || (large && w > 0) || (small && w < 0))
                up[i] = true;
            if (c.op == CmpOp::Equal || (large && w < 0) || (small && w > 0))
                down[i] = true;
        }
    };
    for (const auto &a : task.actions)
        for (const auto &c : a.pre_num)
            note(c);
    for (const auto &c : task.goal_num)
        note(c);
    return {up, down};
}

// -1 down, +1 up, 2 either (assignments and state-dependent magnitudes).
int direction(const NumericEffect &e) {
    if (e.op == EffectOp::Assign || !e.magnitude.is_constant())
        return 2;
    const Rational d = e.constant_delta();
    return d > 0 ? 1 : d < 0 ? -1 : 0;
}

ActionId earliest_achiever(const RPGraph &g, const GroundTask &task, FactId p, int layer) {
    ActionId best = -1;
    int best_layer = std::numeric_limits<int>::max();
    for (const auto &a : task.actions) {
        const int l = g.action_layer[static_cast<std::size_t>(a.id)];
        if (l < 0 || l > layer || !a.adds(p))
            continue;
        if (l < best_layer) {
            best = a.id;
            best_layer = l;
        }
    }
    return best;
}

// expr >= rhs (strict: >).
struct Req {
    LinearExpr expr;
    ExtRational rhs;
    bool strict = false;
    bool operator==(const Req &o) const = default;
};

std::vector<Req> requirements(const NumericCondition &c) {
    std::vector<Req> out;
    const bool strict = c.op == CmpOp::Greater || c.op == CmpOp::Less;
    if (c.op == CmpOp::GreaterEq || c.op == CmpOp::Greater || c.op == CmpOp::Equal)
        out.push_back({c.expr, c.rhs, strict});
    if (c.op == CmpOp::LessEq || c.op == CmpOp::Less || c.op == CmpOp::Equal)
        out.push_back({c.expr * Rational(-1), -c.rhs, strict});
    return out;
}

bool met(const Req &r, const Box &box) {
    const ExtRational top = expr_range(r.expr, box).ub;
    return r.strict ? top > r.rhs : top >= r.rhs;
}

// Optimistic change of r.expr from one application of a, bounds from box.
ExtRational contribution(const GroundAction &a, const Req &r, const Box &box) {
    ExtRational total(0);
    for (const auto &e : a.num_effects) {
        const Rational w = r.expr.coefficient(e.variable);
        if (w == 0 || e.op == EffectOp::Assign)
            continue;
        Interval m = expr_range(e.magnitude, box);
        Interval d = e.op == EffectOp::Increase ? m : Interval{-m.ub, -m.lb};
        const ExtRational x = w > 0 ? d.ub * w : d.lb * w;
        if (x.is_neg_inf())
            return ExtRational::neg_inf();
        total = total + x;
    }
    return total;
}

class MetricFFExtractor {
public:
    MetricFFExtractor(const RPGraph &g, const GroundTask &task, const State &state, bool cycle)
        : g_(g), task_(task), state_(state), cycle_(cycle) {}

    HeuristicResult run() {
        HeuristicResult r;
        if (is_goal(state_, task_))
            return r;
        if (g_.status != RPGStatus::GoalsReached)
            return dead_end_result();
        for (FactId f : task_.goal_facts)
            add_prop(f);
        for (const auto &c : task_.goal_num)
            add_condition(c);
        while (!q_.empty()) {
            auto it = std::prev(q_.end());
            const int l = it->first;
            Bucket b = std::move(it->second);
            q_.erase(it);
            if (l <= 0)
                continue;
            std::set<FactId> done;
            for (FactId p : b.props) {
                if (done.count(p))
                    continue;
                const ActionId a = earliest_achiever(g_, task_, p, l);
                choose(a, l, r);
                for (FactId f : task_.action(a).add_effects)
                    done.insert(f);
            }
            const Box &below = g_.bounds[static_cast<std::size_t>(l - 1)];
            for (const Req &req : b.nums) {
                if (met(req, below)) {
                    push_req(req, l - 1);
                    continue;
                }
                if (try_assign(req, l, r))
                    continue;
                regress(req, l, r);
            }
        }
        r.h = static_cast<double>(r.trace.size());
        return r;
    }

    std::vector<ActionId> layer_one;

private:
    struct Bucket {
        std::set<FactId> props;
        std::vector<Req> nums;
    };

    void add_prop(FactId p) {
        const int l = g_.fact_layer[static_cast<std::size_t>(p)];
        if (l > 0)
            q_[l].props.insert(p);
    }

    void add_condition(const NumericCondition &c) {
        const int l = g_.condition_layer(c);
        if (l <= 0)
            return;
        for (auto &req : requirements(c))
            push_req(req, l);
    }

    void push_req(const Req &req, int l) {
        if (l <= 0)
            return;
        auto &v = q_[l].nums;
        if (std::find(v.begin(), v.end(), req) == v.end())
            v.push_back(req);
    }

    void choose(ActionId a, int l, HeuristicResult &r) {
        r.trace.push_back({a, 1.0, l, 1.0});
        if (g_.action_layer[static_cast<std::size_t>(a)] == 1)
            layer_one.push_back(a);
        const auto &act = task_.action(a);
        for (FactId p : act.pre_facts)
            add_prop(p);
        for (const auto &c : act.pre_num)
            add_condition(c);
    }

    bool try_assign(const Req &req, int l, HeuristicResult &r) {
        if (req.expr.coefficients().size() != 1)
            return false;
        const auto [v, w] = *req.expr.coefficients().begin();
        for (const auto &a : task_.actions) {
            if (!g_.has_action(a.id, l))
                continue;
            const NumericEffect *e = a.effect_on(v);
            if (!e || e->op != EffectOp::Assign || !e->magnitude.is_constant())
                continue;
            const ExtRational val = ExtRational(e->magnitude.constant() * w);
            if (req.strict ? val > req.rhs : val >= req.rhs) {
                choose(a.id, l, r);
                return true;
            }
        }
        return false;
    }

    void regress(Req req, int l, HeuristicResult &r) {
        const Box &below = g_.bounds[static_cast<std::size_t>(l - 1)];
        std::vector<std::pair<ExtRational, ActionId>> inc;
        for (const auto &a : task_.actions) {
            if (!g_.has_action(a.id, l))
                continue;
            const ExtRational c = contribution(a, req, below);
            if (c > ExtRational(0))
                inc.emplace_back(c, a.id);
        }
        std::sort(inc.begin(), inc.end(), [](const auto &x, const auto &y) {
            return x.first != y.first ? x.first > y.first : x.second < y.second;
        });
        std::size_t next = 0;
        while (!met(req, below)) {
            if (next == inc.size()) {
                if (!cycle_ || inc.empty())
                    break;
                next = 0;
            }
            const auto &[c, a] = inc[next++];
            choose(a, l, r);
            req.rhs = req.rhs - c;
        }
        push_req(req, l - 1);
    }

    const RPGraph &g_;
    const GroundTask &task_;
    const State &state_;
    bool cycle_;
    std::map<int, Bucket> q_;
    std::set<FactId> covered_;
};

class LPExtractor {
public:
    LPExtractor(RPGraph &g, const GroundTask &task, const State &state, const LandmarkSet &landmarks,
                const std::vector<bool> &achieved, const HeuristicConfig &config, const PCClassification &pc)
        : g_(g), task_(task), state_(state), landmarks_(landmarks), achieved_(achieved), config_(config), pc_(pc) {}

    // Returns false when the LP budget ran out.
    bool run(HeuristicResult &r) {
        FlowModel &fm = *g_.flow;
        const int final_layer = g_.final_layer;
        bool props_done = false, nums_done = false;
        if (g_.goal_solution && config_.goal_rows()) {
            r.lp_objectives.push_back(g_.goal_solution->objective);
            for (const auto &[a, c] : fm.nonzero_actions(*g_.goal_solution))
                weighted(a, c, 1.0, r);
            props_done = config_.lp_prop_goals;
            nums_done = config_.lp_num_goal_conjunct;
        }
        if (!props_done)
            for (FactId f : task_.goal_facts)
                add_prop(f, 1.0);
        if (!nums_done) {
            const auto &ng = task_.goal_num;
            if (ng.size() > 1) {
                bool all_hold = std::all_of(ng.begin(), ng.end(), [&](const auto &c) { return c.holds(state_.values); });
                if (!all_hold)
                    add_nums(ng, final_layer, 1.0);
            } else if (ng.size() == 1) {
                const int l = g_.condition_layer(ng[0]);
                if (l > 0)
                    add_nums(ng, l, 1.0);
            }
        }
        const auto weights = action_weights(g_, config_, final_layer);
        const auto ctx = integrality_context(g_, task_, pc_, landmarks_, achieved_, state_);
        while (!q_.empty()) {
            auto it = std::prev(q_.end());
            const int l = it->first;
            Bucket b = std::move(it->second);
            q_.erase(it);
            if (l <= 0)
                continue;
            for (const auto &[p, w] : b.props) {
                if (covered_.count(p))
                    continue;
                const ActionId a = earliest_achiever(g_, task_, p, l);
                r.h += w;
                r.trace.push_back({a, 1.0, l, w});
                if (g_.action_layer[static_cast<std::size_t>(a)] == 1)
                    layer_one.push_back(a);
                const auto &act = task_.action(a);
                for (FactId pre : act.pre_facts)
                    add_prop(pre, w);
                for (const auto &c : act.pre_num) {
                    const int cl = g_.condition_layer(c);
                    if (cl > 0)
                        add_nums({c}, cl, w);
                }
                cover(a);
            }
            for (const auto &[conds, w] : b.nums) {
                if (++r.lp_calls > config_.lp_call_budget)
                    return false;
                fm.push();
                fm.restrict_to_layer(l);
                fm.add_conditions(conds);
                fm.set_objective(weights);
                fm.apply_integrality(config_.ints, ctx);
                mp::Solution s = fm.solve(true);
                if (s.status == mp::Status::LimitReached && s.values.empty())
                    s = fm.solve(false);
                fm.pop();
                if (s.status != mp::Status::Optimal && s.values.empty()) {
                    if (l >= final_layer) {
                        r.h = std::numeric_limits<double>::infinity();
                        return true;
                    }
                    add_nums(conds, l + 1, w);
                    continue;
                }
                r.lp_objectives.push_back(s.objective);
                for (const auto &[a, c] : fm.nonzero_actions(s))
                    weighted(a, c, w, r);
            }
        }
        return true;
    }

    std::vector<ActionId> layer_one;

private:
    struct Bucket {
        std::map<FactId, double> props;
        std::vector<std::pair<std::vector<NumericCondition>, double>> nums;
    };

    // An LP-chosen action: its count goes into h, its facts become subgoals.
    void weighted(ActionId a, double c, double w, HeuristicResult &r) {
        const int al = g_.action_layer[static_cast<std::size_t>(a)];
        r.h += w * c;
        r.trace.push_back({a, c, al, w});
        if (al == 1)
            layer_one.push_back(a);
        cover(a);
        const double k = w * std::min(c, 1.0);
        for (FactId pre : task_.action(a).pre_facts)
            add_prop(pre, k);
    }

    // Facts a chosen action adds at their first layer need no other achiever.
    void cover(ActionId a) {
        const int al = g_.action_layer[static_cast<std::size_t>(a)];
        for (FactId f : task_.action(a).add_effects)
            if (g_.fact_layer[static_cast<std::size_t>(f)] == al)
                covered_.insert(f);
    }

    void add_prop(FactId p, double w) {
        const int l = g_.fact_layer[static_cast<std::size_t>(p)];
        if (l <= 0 || w <= 0 || covered_.count(p))
            return;
        auto &slot = q_[l].props[p];
        slot = std::max(slot, w);
    }

    void add_nums(const std::vector<NumericCondition> &conds, int l, double w) {
        if (l <= 0 || w <= 0)
            return;
        auto &v = q_[l].nums;
        for (auto &[c, k] : v)
            if (c == conds) {
                k = std::max(k, w);
                return;
            }
        v.emplace_back(conds, w);
    }

    RPGraph &g_;
    const GroundTask &task_;
    const State &state_;
    const LandmarkSet &landmarks_;
    const std::vector<bool> &achieved_;
    const HeuristicConfig &config_;
    const PCClassification &pc_;
    std::map<int, Bucket> q_;
    std::set<FactId> covered_;
};

}  // namespace

HeuristicResult extract_metricff(const RPGraph &g, const GroundTask &task, const PCClassification &pc,
                                 const State &state, bool cycle_increasers) {
    MetricFFExtractor x(g, task, state, cycle_increasers);
    HeuristicResult r = x.run();
    if (!r.dead_end())
        r.helpful = helpful_actions(task, pc, state, x.layer_one);
    return r;
}

HeuristicResult extract_lprpg(RPGraph &g, const GroundTask &task, const PCClassification &pc, const State &state,
                              const LandmarkSet &landmarks, const std::vector<bool> &achieved,
                              const HeuristicConfig &config) {
    if (is_goal(state, task))
        return {};
    if (g.status != RPGStatus::GoalsReached || !g.flow)
        return dead_end_result();
    LPExtractor x(g, task, state, landmarks, achieved, config, pc);
    HeuristicResult r;
    if (!x.run(r)) {
        const int calls = r.lp_calls - 1;
        r = extract_metricff(g, task, pc, state, false);
        r.lp_calls = calls;
        r.fell_back = true;
        return r;
    }
    if (!r.dead_end())
        r.helpful = helpful_actions(task, pc, state, x.layer_one);
    return r;
}

std::vector<ActionId> helpful_actions(const GroundTask &task, const PCClassification &, const State &state,
                                      const std::vector<ActionId> &layer_one) {
    if (layer_one.empty())
        return {};
    const auto [useful_up, useful_down] = useful_directions(task);
    std::set<FactId> facts;
    std::set<std::pair<VarId, int>> changes;
    auto changes_of = [&](const GroundAction &a) {
        std::vector<std::pair<VarId, int>> out;
        for (const auto &e : a.num_effects) {
            const auto v = static_cast<std::size_t>(e.variable);
            const int d = direction(e);
            if ((d == 1 || d == 2) && useful_up[v])
                out.emplace_back(e.variable, 1);
            if ((d == -1 || d == 2) && useful_down[v])
                out.emplace_back(e.variable, -1);
        }
        return out;
    };
    for (ActionId id : layer_one) {
        const auto &a = task.action(id);
        facts.insert(a.add_effects.begin(), a.add_effects.end());
        for (const auto &c : changes_of(a))
            changes.insert(c);
    }
    std::vector<ActionId> out;
    for (const auto &a : task.actions) {
        if (!is_applicable(state, a))
            continue;
        bool shared = std::any_of(a.add_effects.begin(), a.add_effects.end(), [&](FactId f) { return facts.count(f) > 0; });
        if (!shared)
            for (const auto &c : changes_of(a))
                shared = shared || changes.count(c) > 0;
        if (shared)
            out.push_back(a.id);
    }
    return out;
}

}  // namespace lprpg
