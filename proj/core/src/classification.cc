#include "lprpg/analysis.h"

#include <algorithm>
#include <set>
#include <sstream>

namespace lprpg {

const char *to_string(VarStatus s) {
    switch (s) {
    case VarStatus::ProducerConsumer: return "producer-consumer";
    case VarStatus::CatalyticExtended: return "catalytic-extended";
    case VarStatus::NonConforming: return "non-conforming";
    }
    return "?";
}

Rational PCClassification::delta(VarId v, ActionId a) const {
    const auto &m = deltas[static_cast<std::size_t>(a)];
    auto it = m.find(v);
    return it == m.end() ? Rational(0) : it->second;
}

bool PCClassification::all_conforming() const {
    return std::none_of(vars.begin(), vars.end(),
                        [](const VariableClass &c) { return c.status == VarStatus::NonConforming; });
}

std::vector<std::string> PCClassification::report(const GroundTask &task) const {
    std::vector<std::string> out;
    for (std::size_t v = 0; v < vars.size(); ++v) {
        const auto &c = vars[v];
        std::ostringstream os;
        os << task.variables[v] << " " << to_string(c.status) << " lb=" << c.lb << " ub=" << c.ub
           << " prod=" << c.prod.size() << " cons=" << c.cons.size();
        if (!c.reason.empty())
            os << " reason: " << c.reason;
        out.push_back(os.str());
    }
    for (const auto &s : one_shot) {
        std::ostringstream os;
        os << "one-shot " << task.facts[static_cast<std::size_t>(s.fact)].name << ":";
        for (ActionId a : s.members)
            os << " " << task.action(a).name;
        out.push_back(os.str());
    }
    for (const auto &g : catalytic) {
        std::ostringstream os;
        os << "catalytic " << to_string(g.condition, task) << ":";
        for (ActionId a : g.members)
            os << " " << task.action(a).name;
        out.push_back(os.str());
    }
    return out;
}

namespace {

// w.v op rhs as v op' bound.
std::pair<CmpOp, Rational> single_variable_form(const NumericCondition &c) {
    const Rational w = c.expr.coefficients().begin()->second;
    CmpOp op = w < 0 ? mirror(c.op) : c.op;
    return {op, c.rhs / w};
}

void mark(VariableClass &c, const std::string &reason) {
    if (c.status == VarStatus::NonConforming)
        return;
    c.status = VarStatus::NonConforming;
    c.reason = reason;
}

}  // namespace

PCClassification classify(const GroundTask &task) {
    PCClassification pc;
    const std::size_t nv = task.num_variables();
    pc.vars.resize(nv);
    pc.deltas.resize(task.actions.size());
    std::vector<std::set<ExtRational>> ubs(nv), lbs(nv);
    std::map<NumericCondition, std::vector<ActionId>> groups;

    for (const auto &a : task.actions) {
        for (const auto &e : a.num_effects) {
            auto &vc = pc.vars[static_cast<std::size_t>(e.variable)];
            const std::string &vname = task.variables[static_cast<std::size_t>(e.variable)];
            if (e.op == EffectOp::Assign) {
                mark(vc, "assignment to " + vname + " in " + a.name);
                continue;
            }
            if (!e.magnitude.is_constant()) {
                mark(vc, "state-dependent effect on " + vname + " in " + a.name);
                continue;
            }
            const Rational d = e.constant_delta();
            if (d == 0)
                continue;
            pc.deltas[static_cast<std::size_t>(a.id)][e.variable] = d;
            std::vector<const NumericCondition *> on_v;
            for (const auto &c : a.pre_num)
                if (c.mentions(e.variable))
                    on_v.push_back(&c);
            if (on_v.size() > 1) {
                mark(vc, "several preconditions on " + vname + " in " + a.name);
                continue;
            }
            if (!on_v.empty() && !on_v[0]->is_single_variable()) {
                mark(vc, "multi-variable precondition on affected " + vname + " in " + a.name);
                continue;
            }
            std::pair<CmpOp, Rational> form{CmpOp::Equal, Rational(0)};
            if (!on_v.empty())
                form = single_variable_form(*on_v[0]);
            if (d > 0) {
                vc.prod.push_back(a.id);
                ExtRational ub = ExtRational::pos_inf();
                if (!on_v.empty()) {
                    if (form.first != CmpOp::LessEq) {
                        mark(vc, "producer " + a.name + " has a precondition on " + vname + " other than <=");
                        continue;
                    }
                    ub = ExtRational(form.second + d);
                }
                pc.max_prod[{a.id, e.variable}] = ub;
                ubs[static_cast<std::size_t>(e.variable)].insert(ub);
            } else {
                vc.cons.push_back(a.id);
                ExtRational lb = ExtRational::neg_inf();
                if (!on_v.empty()) {
                    if (form.first != CmpOp::GreaterEq) {
                        mark(vc, "consumer " + a.name + " has a precondition on " + vname + " other than >=");
                        continue;
                    }
                    lb = ExtRational(form.second + d);
                }
                pc.min_cons[{a.id, e.variable}] = lb;
                lbs[static_cast<std::size_t>(e.variable)].insert(lb);
            }
        }
        // Conditions over variables the action leaves untouched.
        for (const auto &c : a.pre_num) {
            bool touches = false;
            for (const auto &[v, w] : c.expr.coefficients()) {
                const NumericEffect *e = a.effect_on(v);
                if (e && !(e->op != EffectOp::Assign && e->magnitude.is_constant() && e->constant_delta() == 0))
                    touches = true;
            }
            if (touches) {
                // Already handled above when single-variable; flag the others.
                if (!c.is_single_variable())
                    for (const auto &[v, w] : c.expr.coefficients())
                        if (a.effect_on(v))
                            mark(pc.vars[static_cast<std::size_t>(v)],
                                 "multi-variable precondition on affected " +
                                     task.variables[static_cast<std::size_t>(v)] + " in " + a.name);
                continue;
            }
            std::vector<NumericCondition> parts;
            switch (c.op) {
            case CmpOp::GreaterEq:
            case CmpOp::Greater:
                parts.push_back({c.expr, CmpOp::GreaterEq, c.rhs});
                break;
            case CmpOp::LessEq:
            case CmpOp::Less:
                parts.push_back({c.expr * Rational(-1), CmpOp::GreaterEq, -c.rhs});
                break;
            case CmpOp::Equal:
                parts.push_back({c.expr, CmpOp::GreaterEq, c.rhs});
                parts.push_back({c.expr * Rational(-1), CmpOp::GreaterEq, -c.rhs});
                break;
            }
            for (auto &p : parts)
                groups[p].push_back(a.id);
        }
    }

    for (std::size_t v = 0; v < nv; ++v) {
        auto &vc = pc.vars[v];
        if (ubs[v].size() > 1)
            mark(vc, "producers of " + task.variables[v] + " disagree on the upper bound");
        if (lbs[v].size() > 1)
            mark(vc, "consumers of " + task.variables[v] + " disagree on the lower bound");
        if (vc.status == VarStatus::NonConforming)
            continue;
        if (!ubs[v].empty())
            vc.ub = *ubs[v].begin();
        if (!lbs[v].empty())
            vc.lb = *lbs[v].begin();
    }
    for (auto &[cond, members] : groups) {
        for (const auto &[v, w] : cond.expr.coefficients()) {
            auto &vc = pc.vars[static_cast<std::size_t>(v)];
            if (vc.status == VarStatus::ProducerConsumer)
                vc.status = VarStatus::CatalyticExtended;
        }
        pc.catalytic.push_back({cond, members});
    }
    pc.count_bound.assign(task.actions.size(), Rational(1000000));
    return pc;
}

std::vector<OneShotSet> detect_one_shot_sets(const GroundTask &task) {
    std::vector<bool> added(task.num_facts(), false);
    for (const auto &a : task.actions)
        for (FactId f : a.add_effects)
            added[static_cast<std::size_t>(f)] = true;
    std::vector<OneShotSet> out;
    for (std::size_t f = 0; f < task.num_facts(); ++f) {
        if (added[f])
            continue;
        OneShotSet s;
        s.fact = static_cast<FactId>(f);
        for (const auto &a : task.actions)
            if (a.requires_fact(s.fact) && a.deletes(s.fact))
                s.members.push_back(a.id);
        if (!s.members.empty())
            out.push_back(std::move(s));
    }
    return out;
}

void compute_count_bounds(const GroundTask &task, PCClassification &pc, Rational cap) {
    pc.count_bound.assign(task.actions.size(), cap);
    for (const auto &a : task.actions) {
        Rational &u = pc.count_bound[static_cast<std::size_t>(a.id)];
        for (const auto &[w, d] : pc.deltas[static_cast<std::size_t>(a.id)]) {
            const auto &wc = pc.vars[static_cast<std::size_t>(w)];
            if (d >= 0 || !wc.prod.empty() || wc.status == VarStatus::NonConforming || !wc.lb.is_finite())
                continue;
            Rational avail = task.initial.values[static_cast<std::size_t>(w)] - wc.lb.value();
            if (avail < 0)
                avail = 0;
            u = std::min(u, avail / -d);
        }
    }
    for (const auto &s : pc.one_shot)
        for (ActionId a : s.members)
            pc.count_bound[static_cast<std::size_t>(a)] = std::min(pc.count_bound[static_cast<std::size_t>(a)], Rational(1));
}

GroundTask rewrite_assignments(const GroundTask &task, const PCClassification &) {
    GroundTask out = task;
    const auto one_shot = detect_one_shot_sets(task);
    for (std::size_t v = 0; v < task.num_variables(); ++v) {
        const VarId var = static_cast<VarId>(v);
        std::vector<ActionId> assigners;
        std::vector<ActionId> others;  // actions reading or otherwise affecting v
        bool constant = true;
        for (const auto &a : task.actions) {
            const NumericEffect *e = a.effect_on(var);
            bool reads = std::any_of(a.pre_num.begin(), a.pre_num.end(),
                                     [&](const NumericCondition &c) { return c.mentions(var); });
            for (const auto &x : a.num_effects)
                if (x.magnitude.mentions(var))
                    reads = true;
            if (e && e->op == EffectOp::Assign) {
                assigners.push_back(a.id);
                if (!e->magnitude.is_constant() || reads)
                    constant = false;
            } else if (e || reads) {
                others.push_back(a.id);
            }
        }
        if (assigners.empty() || !constant)
            continue;
        const Rational init = task.initial.values[v];
        auto rewrite_all = [&]() {
            for (ActionId id : assigners) {
                auto &a = out.actions[static_cast<std::size_t>(id)];
                for (auto &e : a.num_effects)
                    if (e.variable == var) {
                        e.magnitude = LinearExpr(e.magnitude.constant() - init);
                        e.op = EffectOp::Increase;
                    }
                a.assignment_rewritten = true;
            }
        };
        // Assignments that can only ever restate the initial value.
        bool only_initial = others.empty() && std::all_of(assigners.begin(), assigners.end(), [&](ActionId id) {
                                return task.action(id).effect_on(var)->magnitude.constant() == init;
                            });
        if (only_initial) {
            rewrite_all();
            continue;
        }
        // At most one assigner can ever fire.
        bool one_set = std::any_of(one_shot.begin(), one_shot.end(), [&](const OneShotSet &s) {
            return std::all_of(assigners.begin(), assigners.end(), [&](ActionId id) {
                return std::binary_search(s.members.begin(), s.members.end(), id);
            });
        });
        if (!one_set)
            continue;
        // A gate fact achieved by exactly the assigners, required by every
        // other action touching v.
        bool gated = false;
        for (std::size_t f = 0; f < task.num_facts() && !gated; ++f) {
            const FactId g = static_cast<FactId>(f);
            if (task.initial.has(g))
                continue;
            bool ok = true;
            for (const auto &a : task.actions) {
                bool is_assigner = std::binary_search(assigners.begin(), assigners.end(), a.id);
                if (a.adds(g) != is_assigner) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                continue;
            ok = std::all_of(others.begin(), others.end(),
                             [&](ActionId id) { return task.action(id).requires_fact(g); });
            gated = ok;
        }
        if (gated)
            rewrite_all();
    }
    return out;
}

AnalysedTask analyse(const GroundTask &raw) {
    AnalysedTask r;
    GroundTask strict = rewrite_strict_inequalities(raw);
    PCClassification first = classify(strict);
    r.task = rewrite_assignments(strict, first);
    r.pc = classify(r.task);
    r.pc.one_shot = detect_one_shot_sets(r.task);
    compute_count_bounds(r.task, r.pc);
    return r;
}

}  // namespace lprpg
