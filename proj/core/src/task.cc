#include "lprpg/task.h"

#include <algorithm>
#include <functional>
#include <sstream>

namespace lprpg {

LinearExpr LinearExpr::variable(VarId v, Rational weight) {
    LinearExpr e;
    e.add_term(v, weight);
    return e;
}

Rational LinearExpr::coefficient(VarId v) const {
    auto it = coeffs_.find(v);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void LinearExpr::add_term(VarId v, const Rational &weight) {
    if (weight == 0)
        return;
    auto [it, inserted] = coeffs_.try_emplace(v, weight);
    if (!inserted) {
        it->second += weight;
        if (it->second == 0)
            coeffs_.erase(it);
    }
}

LinearExpr &LinearExpr::operator+=(const LinearExpr &o) {
    for (const auto &[v, w] : o.coeffs_)
        add_term(v, w);
    constant_ += o.constant_;
    return *this;
}

LinearExpr &LinearExpr::operator-=(const LinearExpr &o) {
    for (const auto &[v, w] : o.coeffs_)
        add_term(v, -w);
    constant_ -= o.constant_;
    return *this;
}

LinearExpr &LinearExpr::operator*=(const Rational &s) {
    if (s == 0) {
        coeffs_.clear();
        constant_ = 0;
        return *this;
    }
    for (auto &entry : coeffs_)
        entry.second *= s;
    constant_ *= s;
    return *this;
}

bool LinearExpr::operator<(const LinearExpr &o) const {
    if (coeffs_ != o.coeffs_)
        return coeffs_ < o.coeffs_;
    return constant_ < o.constant_;
}

Rational LinearExpr::evaluate(const std::vector<Rational> &values) const {
    Rational sum = constant_;
    for (const auto &[v, w] : coeffs_)
        sum += w * values[static_cast<std::size_t>(v)];
    return sum;
}

const char *to_string(CmpOp op) {
    switch (op) {
    case CmpOp::LessEq: return "<=";
    case CmpOp::Less: return "<";
    case CmpOp::Equal: return "=";
    case CmpOp::Greater: return ">";
    case CmpOp::GreaterEq: return ">=";
    }
    return "?";
}

bool compare(const Rational &lhs, CmpOp op, const Rational &rhs) {
    switch (op) {
    case CmpOp::LessEq: return lhs <= rhs;
    case CmpOp::Less: return lhs < rhs;
    case CmpOp::Equal: return lhs == rhs;
    case CmpOp::Greater: return lhs > rhs;
    case CmpOp::GreaterEq: return lhs >= rhs;
    }
    return false;
}

CmpOp mirror(CmpOp op) {
    switch (op) {
    case CmpOp::LessEq: return CmpOp::GreaterEq;
    case CmpOp::Less: return CmpOp::Greater;
    case CmpOp::Greater: return CmpOp::Less;
    case CmpOp::GreaterEq: return CmpOp::LessEq;
    default: return op;
    }
}

NumericCondition NumericCondition::make(const LinearExpr &lhs, CmpOp op, const LinearExpr &rhs_expr) {
    NumericCondition c;
    c.expr = lhs - rhs_expr;
    c.rhs = -c.expr.constant();
    c.expr.set_constant(0);
    c.op = op;
    return c;
}

bool NumericCondition::holds(const std::vector<Rational> &values) const {
    return compare(expr.evaluate(values), op, rhs);
}

bool NumericCondition::operator<(const NumericCondition &o) const {
    if (!(expr == o.expr))
        return expr < o.expr;
    if (op != o.op)
        return op < o.op;
    return rhs < o.rhs;
}

const char *to_string(EffectOp op) {
    switch (op) {
    case EffectOp::Increase: return "increase";
    case EffectOp::Decrease: return "decrease";
    case EffectOp::Assign: return "assign";
    }
    return "?";
}

Rational NumericEffect::constant_delta() const {
    if (op == EffectOp::Assign || !magnitude.is_constant())
        throw std::logic_error("constant_delta() on a non-constant effect");
    return op == EffectOp::Increase ? magnitude.constant() : -magnitude.constant();
}

const NumericEffect *GroundAction::effect_on(VarId v) const {
    for (const auto &e : num_effects)
        if (e.variable == v)
            return &e;
    return nullptr;
}

bool GroundAction::adds(FactId f) const {
    return std::binary_search(add_effects.begin(), add_effects.end(), f);
}

bool GroundAction::deletes(FactId f) const {
    return std::binary_search(del_effects.begin(), del_effects.end(), f);
}

bool GroundAction::requires_fact(FactId f) const {
    return std::binary_search(pre_facts.begin(), pre_facts.end(), f);
}

std::size_t StateHash::operator()(const State &s) const {
    std::size_t h = std::hash<std::vector<bool>>()(s.facts);
    for (const auto &v : s.values) {
        h ^= std::hash<std::int64_t>()(v.numerator()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= std::hash<std::int64_t>()(v.denominator()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

void GroundTask::check_ids() const {
    auto fact_ok = [&](FactId f) { return f >= 0 && static_cast<std::size_t>(f) < facts.size(); };
    auto var_ok = [&](VarId v) { return v >= 0 && static_cast<std::size_t>(v) < variables.size(); };
    auto expr_ok = [&](const LinearExpr &e) {
        return std::all_of(e.coefficients().begin(), e.coefficients().end(),
                           [&](const auto &t) { return var_ok(t.first); });
    };
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const auto &a = actions[i];
        if (a.id != static_cast<ActionId>(i))
            throw std::logic_error("action id mismatch at " + a.name);
        for (auto f : a.pre_facts) if (!fact_ok(f)) throw std::logic_error("bad fact id in " + a.name);
        for (auto f : a.add_effects) if (!fact_ok(f)) throw std::logic_error("bad fact id in " + a.name);
        for (auto f : a.del_effects) if (!fact_ok(f)) throw std::logic_error("bad fact id in " + a.name);
        for (const auto &c : a.pre_num) if (!expr_ok(c.expr)) throw std::logic_error("bad variable id in " + a.name);
        for (const auto &e : a.num_effects)
            if (!var_ok(e.variable) || !expr_ok(e.magnitude))
                throw std::logic_error("bad variable id in " + a.name);
    }
    for (auto f : goal_facts) if (!fact_ok(f)) throw std::logic_error("bad goal fact id");
    for (const auto &c : goal_num) if (!expr_ok(c.expr)) throw std::logic_error("bad goal variable id");
    if (initial.facts.size() != facts.size() || initial.values.size() != variables.size())
        throw std::logic_error("initial state size mismatch");
}

namespace {
std::string expr_to_string(const LinearExpr &e, const std::function<std::string(VarId)> &name) {
    std::ostringstream os;
    bool first = true;
    for (const auto &[v, w] : e.coefficients()) {
        if (!first) os << (w < 0 ? " - " : " + ");
        else if (w < 0) os << "-";
        Rational aw = w < 0 ? -w : w;
        if (aw != 1) os << to_string(aw) << "*";
        os << name(v);
        first = false;
    }
    if (first)
        os << to_string(e.constant());
    else if (e.constant() != 0)
        os << (e.constant() < 0 ? " - " : " + ") << to_string(e.constant() < 0 ? -e.constant() : e.constant());
    return os.str();
}
}  // namespace

std::string to_string(const LinearExpr &e, const GroundTask &task) {
    return expr_to_string(e, [&](VarId v) { return task.variables[static_cast<std::size_t>(v)]; });
}

std::string to_string(const NumericCondition &c, const GroundTask &task) {
    return to_string(c.expr, task) + " " + to_string(c.op) + " " + to_string(c.rhs);
}

std::string to_string(const NumericCondition &c) {
    return expr_to_string(c.expr, [](VarId v) { return "v" + std::to_string(v); }) + " " +
           to_string(c.op) + " " + to_string(c.rhs);
}

}  // namespace lprpg
