#pragma once

#include "lprpg/rational.h"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lprpg {

using FactId = int;
using VarId = int;
using ActionId = int;

// w . v + k over numeric-variable ids. Zero weights are never stored and the
// map keeps ids in ascending order, so printing is deterministic.
class LinearExpr {
public:
    LinearExpr() = default;
    explicit LinearExpr(Rational constant) : constant_(constant) {}
    static LinearExpr variable(VarId v, Rational weight = 1);

    const std::map<VarId, Rational> &coefficients() const { return coeffs_; }
    const Rational &constant() const { return constant_; }
    bool is_constant() const { return coeffs_.empty(); }
    Rational coefficient(VarId v) const;
    bool mentions(VarId v) const { return coeffs_.count(v) > 0; }

    void add_term(VarId v, const Rational &weight);
    void add_constant(const Rational &c) { constant_ += c; }
    void set_constant(const Rational &c) { constant_ = c; }

    LinearExpr &operator+=(const LinearExpr &o);
    LinearExpr &operator-=(const LinearExpr &o);
    LinearExpr &operator*=(const Rational &s);
    LinearExpr operator+(const LinearExpr &o) const { LinearExpr r = *this; return r += o; }
    LinearExpr operator-(const LinearExpr &o) const { LinearExpr r = *this; return r -= o; }
    LinearExpr operator*(const Rational &s) const { LinearExpr r = *this; return r *= s; }
    bool operator==(const LinearExpr &o) const = default;
    bool operator<(const LinearExpr &o) const;

    Rational evaluate(const std::vector<Rational> &values) const;

private:
    std::map<VarId, Rational> coeffs_;
    Rational constant_{0};
};

enum class CmpOp { LessEq, Less, Equal, Greater, GreaterEq };

const char *to_string(CmpOp op);
bool compare(const Rational &lhs, CmpOp op, const Rational &rhs);
CmpOp mirror(CmpOp op);  // the op obtained by negating both sides

// <expr, op, rhs>; the constant part of expr is always folded into rhs.
struct NumericCondition {
    LinearExpr expr;
    CmpOp op = CmpOp::GreaterEq;
    Rational rhs{0};

    // Builds lhs op rhs_expr, moving everything to canonical form.
    static NumericCondition make(const LinearExpr &lhs, CmpOp op, const LinearExpr &rhs_expr);

    bool holds(const std::vector<Rational> &values) const;
    bool is_single_variable() const { return expr.coefficients().size() == 1; }
    bool mentions(VarId v) const { return expr.mentions(v); }
    bool operator==(const NumericCondition &o) const = default;
    bool operator<(const NumericCondition &o) const;
};

enum class EffectOp { Increase, Decrease, Assign };

const char *to_string(EffectOp op);

struct NumericEffect {
    VarId variable = -1;
    EffectOp op = EffectOp::Increase;
    LinearExpr magnitude;

    // Signed constant change for increase/decrease effects with constant
    // magnitude. Throws for assignments or state-dependent magnitudes.
    Rational constant_delta() const;
    bool operator==(const NumericEffect &o) const = default;
};

struct GroundAction {
    ActionId id = -1;
    std::string name;                 // "(load v1 p1 timber)"
    std::vector<FactId> pre_facts;    // sorted, unique
    std::vector<NumericCondition> pre_num;
    std::vector<FactId> add_effects;  // sorted, unique
    std::vector<FactId> del_effects;  // sorted, unique
    std::vector<NumericEffect> num_effects;  // at most one per variable
    bool assignment_rewritten = false;

    const NumericEffect *effect_on(VarId v) const;
    bool adds(FactId f) const;
    bool deletes(FactId f) const;
    bool requires_fact(FactId f) const;
};

struct State {
    std::vector<bool> facts;
    std::vector<Rational> values;

    bool has(FactId f) const { return facts[static_cast<std::size_t>(f)]; }
    bool operator==(const State &o) const = default;
};

struct StateHash {
    std::size_t operator()(const State &s) const;
};

struct FactInfo {
    std::string predicate;
    std::vector<std::string> args;
    std::string name;  // "(pred a b)"
};

struct GroundTask {
    std::vector<FactInfo> facts;
    std::vector<std::string> variables;  // "(available timber p1)"
    std::vector<GroundAction> actions;
    State initial;
    std::vector<FactId> goal_facts;
    std::vector<NumericCondition> goal_num;
    // Strict conditions that could not be rewritten to non-strict form,
    // as printable descriptions.
    std::vector<std::string> unrewritable_strict;

    std::size_t num_facts() const { return facts.size(); }
    std::size_t num_variables() const { return variables.size(); }
    const GroundAction &action(ActionId a) const { return actions[static_cast<std::size_t>(a)]; }

    // Throws std::logic_error if some referenced id is out of range.
    void check_ids() const;
};

std::string to_string(const LinearExpr &e, const GroundTask &task);
std::string to_string(const NumericCondition &c, const GroundTask &task);
std::string to_string(const NumericCondition &c);

// ---- transition semantics ------------------------------------------------

class PreconditionViolated : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool is_applicable(const State &s, const GroundAction &a);
// Applies a; throws PreconditionViolated naming the failing condition.
State apply(const State &s, const GroundAction &a, const GroundTask &task);
// Applies a without checking preconditions.
State apply_unchecked(const State &s, const GroundAction &a);
bool is_goal(const State &s, const GroundTask &task);

// Rewrites v > k (v < k) to v >= k + eps (v <= k - eps) where eps is the
// reciprocal of the LCM of all denominators the condition's expression can
// take; conditions over variables with non-constant effects are flagged in
// unrewritable_strict and left intact.
GroundTask rewrite_strict_inequalities(const GroundTask &task);

}  // namespace lprpg
