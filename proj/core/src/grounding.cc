#include "lprpg/pddl.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace lprpg {

using pddl::Atom;
using pddl::DomainAST;
using pddl::NumExpr;
using pddl::ProblemAST;
using pddl::TypedName;

namespace {

std::string term_name(const std::string &pred, const std::vector<std::string> &args) {
    std::string s = "(" + pred;
    for (const auto &a : args)
        s += " " + a;
    return s + ")";
}

using Binding = std::map<std::string, std::string>;

std::vector<std::string> bind_args(const Atom &a, const Binding &b) {
    std::vector<std::string> out;
    out.reserve(a.args.size());
    for (const auto &x : a.args)
        out.push_back(x[0] == '?' ? b.at(x) : x);
    return out;
}

// Index tables built while grounding. Ids here are provisional and are
// remapped to lexicographic order at the end.
struct Tables {
    std::unordered_map<std::string, int> fact_ids;
    std::vector<FactInfo> facts;
    std::unordered_map<std::string, int> var_ids;
    std::vector<std::string> vars;

    int fact(const std::string &pred, const std::vector<std::string> &args) {
        std::string n = term_name(pred, args);
        auto [it, fresh] = fact_ids.emplace(n, static_cast<int>(facts.size()));
        if (fresh)
            facts.push_back({pred, args, n});
        return it->second;
    }
    int var(const std::string &name) {
        auto [it, fresh] = var_ids.emplace(name, static_cast<int>(vars.size()));
        if (fresh)
            vars.push_back(name);
        return it->second;
    }
};

class Grounder {
public:
    Grounder(const DomainAST &d, const ProblemAST &p, const GroundingOptions &o) : d_(d), p_(p), opts_(o) {
        for (const auto &c : d.constants)
            objects_.push_back(c);
        for (const auto &o2 : p.objects)
            objects_.push_back(o2);
        for (const auto &o2 : objects_)
            object_type_[o2.name] = o2.type;
        for (const auto &a : d.actions) {
            for (const auto &x : a.effect.adds) fluent_preds_.insert(x.predicate);
            for (const auto &x : a.effect.dels) fluent_preds_.insert(x.predicate);
            for (const auto &x : a.effect.numeric) fluent_funcs_.insert(x.fluent.predicate);
        }
        for (const auto &a : p.init_atoms)
            init_atoms_.insert(term_name(a.predicate, a.args));
        for (const auto &[f, v] : p.init_values) {
            std::string n = term_name(f.predicate, f.args);
            if (init_values_.count(n) && init_values_[n] != v)
                throw InputError("conflicting initial values for " + n);
            init_values_[n] = v;
        }
    }

    GroundTask run() {
        std::vector<GroundAction> actions;
        for (const auto &schema : d_.actions)
            ground_schema(schema, actions);
        GroundTask t;
        // Goal.
        std::vector<int> goal_facts;
        for (const auto &a : p_.goal.atoms) {
            auto args = bind_args(a, {});
            if (!fluent_preds_.count(a.predicate) && init_atoms_.count(term_name(a.predicate, args)))
                continue;  // statically true
            goal_facts.push_back(tables_.fact(a.predicate, args));
        }
        std::vector<NumericCondition> goal_num;
        for (const auto &c : p_.goal.comparisons) {
            auto cond = NumericCondition::make(linearize(c.lhs, {}), c.op, linearize(c.rhs, {}));
            if (cond.expr.is_constant() && cond.holds({}))
                continue;
            goal_num.push_back(cond);
        }
        for (const auto &a : p_.init_atoms)
            if (fluent_preds_.count(a.predicate))
                tables_.fact(a.predicate, a.args);

        // Lexicographic remap.
        std::vector<int> fact_order(tables_.facts.size()), var_order(tables_.vars.size());
        for (std::size_t i = 0; i < fact_order.size(); ++i) fact_order[i] = static_cast<int>(i);
        for (std::size_t i = 0; i < var_order.size(); ++i) var_order[i] = static_cast<int>(i);
        std::sort(fact_order.begin(), fact_order.end(),
                  [&](int a, int b) { return tables_.facts[a].name < tables_.facts[b].name; });
        std::sort(var_order.begin(), var_order.end(),
                  [&](int a, int b) { return tables_.vars[a] < tables_.vars[b]; });
        std::vector<int> fact_map(fact_order.size()), var_map(var_order.size());
        for (std::size_t i = 0; i < fact_order.size(); ++i) {
            fact_map[fact_order[i]] = static_cast<int>(i);
            t.facts.push_back(tables_.facts[fact_order[i]]);
        }
        for (std::size_t i = 0; i < var_order.size(); ++i) {
            var_map[var_order[i]] = static_cast<int>(i);
            t.variables.push_back(tables_.vars[var_order[i]]);
        }
        auto remap_facts = [&](std::vector<FactId> &v) {
            for (auto &f : v) f = fact_map[f];
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        };
        auto remap_expr = [&](const LinearExpr &e) {
            LinearExpr r(e.constant());
            for (const auto &[v, w] : e.coefficients())
                r.add_term(var_map[v], w);
            return r;
        };
        auto remap_cond = [&](NumericCondition c) {
            c.expr = remap_expr(c.expr);
            return c;
        };
        for (auto &a : actions) {
            a.id = static_cast<ActionId>(t.actions.size());
            remap_facts(a.pre_facts);
            remap_facts(a.add_effects);
            remap_facts(a.del_effects);
            for (auto &c : a.pre_num) c = remap_cond(c);
            std::sort(a.pre_num.begin(), a.pre_num.end());
            a.pre_num.erase(std::unique(a.pre_num.begin(), a.pre_num.end()), a.pre_num.end());
            for (auto &e : a.num_effects) {
                e.variable = var_map[e.variable];
                e.magnitude = remap_expr(e.magnitude);
            }
            std::sort(a.num_effects.begin(), a.num_effects.end(),
                      [](const NumericEffect &x, const NumericEffect &y) { return x.variable < y.variable; });
            t.actions.push_back(std::move(a));
        }
        t.initial.facts.assign(t.facts.size(), false);
        for (const auto &a : p_.init_atoms) {
            if (!fluent_preds_.count(a.predicate))
                continue;
            t.initial.facts[fact_map[tables_.fact_ids.at(term_name(a.predicate, a.args))]] = true;
        }
        t.initial.values.resize(t.variables.size());
        for (std::size_t i = 0; i < t.variables.size(); ++i) {
            auto it = init_values_.find(t.variables[i]);
            if (it == init_values_.end())
                throw InputError("missing initial value for " + t.variables[i]);
            t.initial.values[i] = it->second;
        }
        t.goal_facts = goal_facts;
        remap_facts(t.goal_facts);
        for (auto &c : goal_num) t.goal_num.push_back(remap_cond(c));
        t.check_ids();
        return t;
    }

private:
    std::vector<std::string> objects_of(const std::string &type) const {
        std::vector<std::string> out;
        for (const auto &o : objects_)
            if (d_.is_subtype(o.type, type))
                out.push_back(o.name);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    bool args_typed(const std::vector<std::string> &args, const pddl::Signature &sig) const {
        for (std::size_t i = 0; i < args.size(); ++i)
            if (!d_.is_subtype(object_type_.at(args[i]), sig.params[i].type))
                return false;
        return true;
    }

    LinearExpr linearize(const NumExpr &n, const Binding &b) {
        switch (n.kind) {
        case NumExpr::Kind::Number:
            return LinearExpr(n.value);
        case NumExpr::Kind::Fluent: {
            auto args = bind_args(n.fluent, b);
            std::string name = term_name(n.fluent.predicate, args);
            if (!fluent_funcs_.count(n.fluent.predicate)) {
                auto it = init_values_.find(name);
                if (it == init_values_.end())
                    throw InputError("missing initial value for " + name);
                return LinearExpr(it->second);
            }
            return LinearExpr::variable(tables_.var(name));
        }
        case NumExpr::Kind::Add: {
            LinearExpr r;
            for (const auto &c : n.children)
                r += linearize(c, b);
            return r;
        }
        case NumExpr::Kind::Sub:
            return linearize(n.children[0], b) - linearize(n.children[1], b);
        case NumExpr::Kind::Neg:
            return linearize(n.children[0], b) * Rational(-1);
        case NumExpr::Kind::Mul: {
            LinearExpr r(Rational(1));
            for (const auto &c : n.children) {
                LinearExpr x = linearize(c, b);
                if (x.is_constant())
                    r *= x.constant();
                else if (r.is_constant())
                    r = x * r.constant();
                else
                    throw UnsupportedConstruct("non-linear product of fluents");
            }
            return r;
        }
        case NumExpr::Kind::Div: {
            LinearExpr num = linearize(n.children[0], b);
            LinearExpr den = linearize(n.children[1], b);
            if (!den.is_constant())
                throw UnsupportedConstruct("division by a fluent");
            if (den.constant() == 0)
                throw InputError("division by zero");
            return num * (Rational(1) / den.constant());
        }
        }
        return {};
    }

    // Returns false if the binding is pruned.
    bool ground_binding(const pddl::ActionSchema &s, const Binding &b, std::vector<GroundAction> &out) {
        std::vector<std::string> param_values;
        for (const auto &p : s.parameters)
            param_values.push_back(b.at(p.name));
        auto typed_atom = [&](const Atom &a, const pddl::Signature *sig) {
            return args_typed(bind_args(a, b), *sig);
        };
        for (const auto &a : s.precondition.atoms)
            if (!typed_atom(a, d_.find_predicate(a.predicate)))
                return false;
        for (const auto &a : s.effect.adds)
            if (!typed_atom(a, d_.find_predicate(a.predicate)))
                return false;
        for (const auto &a : s.effect.dels)
            if (!typed_atom(a, d_.find_predicate(a.predicate)))
                return false;
        for (const auto &e : s.effect.numeric)
            if (!typed_atom(e.fluent, d_.find_function(e.fluent.predicate)))
                return false;

        GroundAction g;
        g.name = term_name(s.name, param_values);
        for (const auto &a : s.precondition.atoms) {
            auto args = bind_args(a, b);
            if (!fluent_preds_.count(a.predicate)) {
                if (!init_atoms_.count(term_name(a.predicate, args)))
                    return false;
                continue;
            }
            g.pre_facts.push_back(tables_.fact(a.predicate, args));
        }
        for (const auto &c : s.precondition.comparisons) {
            auto cond = NumericCondition::make(linearize(c.lhs, b), c.op, linearize(c.rhs, b));
            if (cond.expr.is_constant()) {
                if (!cond.holds({}))
                    return false;
                continue;
            }
            g.pre_num.push_back(cond);
        }
        for (const auto &a : s.effect.adds)
            g.add_effects.push_back(tables_.fact(a.predicate, bind_args(a, b)));
        for (const auto &a : s.effect.dels)
            g.del_effects.push_back(tables_.fact(a.predicate, bind_args(a, b)));
        for (const auto &e : s.effect.numeric) {
            std::string name = term_name(e.fluent.predicate, bind_args(e.fluent, b));
            VarId v = tables_.var(name);
            for (const auto &prev : g.num_effects)
                if (prev.variable == v)
                    throw UnsupportedConstruct("multiple numeric effects on " + name + " in " + g.name);
            g.num_effects.push_back({v, e.op, linearize(e.value, b)});
        }
        if (out.size() >= opts_.max_ground_actions)
            throw InputError("grounding exceeds the cap of " + std::to_string(opts_.max_ground_actions) +
                             " actions");
        out.push_back(std::move(g));
        return true;
    }

    void ground_schema(const pddl::ActionSchema &s, std::vector<GroundAction> &out) {
        const std::size_t n = s.parameters.size();
        std::vector<std::vector<std::string>> domains;
        for (const auto &p : s.parameters)
            domains.push_back(objects_of(p.type));
        // Static atoms are checked as soon as their last parameter is bound.
        std::vector<std::vector<const Atom *>> checks(n + 1);
        for (const auto &a : s.precondition.atoms) {
            if (fluent_preds_.count(a.predicate))
                continue;
            std::size_t depth = 0;
            for (const auto &x : a.args)
                if (x[0] == '?')
                    for (std::size_t i = 0; i < n; ++i)
                        if (s.parameters[i].name == x)
                            depth = std::max(depth, i + 1);
            checks[depth].push_back(&a);
        }
        Binding b;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            for (const Atom *a : checks[i])
                if (!init_atoms_.count(term_name(a->predicate, bind_args(*a, b))))
                    return;
            if (i == n) {
                ground_binding(s, b, out);
                return;
            }
            for (const auto &o : domains[i]) {
                b[s.parameters[i].name] = o;
                rec(i + 1);
            }
            b.erase(s.parameters[i].name);
        };
        rec(0);
    }

    const DomainAST &d_;
    const ProblemAST &p_;
    GroundingOptions opts_;
    std::vector<TypedName> objects_;
    std::unordered_map<std::string, std::string> object_type_;
    std::set<std::string> fluent_preds_;
    std::set<std::string> fluent_funcs_;
    std::unordered_set<std::string> init_atoms_;
    std::unordered_map<std::string, Rational> init_values_;
    Tables tables_;
};

}  // namespace

GroundTask ground(const DomainAST &domain, const ProblemAST &problem, const GroundingOptions &options) {
    return Grounder(domain, problem, options).run();
}

}  // namespace lprpg
