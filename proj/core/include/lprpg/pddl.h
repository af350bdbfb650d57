#pragma once

#include "lprpg/rational.h"
#include "lprpg/task.h"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lprpg {

class PddlError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: carries the position and what the parser expected.
class ParseError : public PddlError {
public:
    ParseError(int line, int column, const std::string &expected, const std::string &found);
    int line() const { return line_; }
    int column() const { return column_; }
    const std::string &expected() const { return expected_; }

private:
    int line_;
    int column_;
    std::string expected_;
};

// Well-formed PDDL outside the supported numeric fragment.
class UnsupportedConstruct : public PddlError {
public:
    explicit UnsupportedConstruct(const std::string &construct);
    const std::string &construct() const { return construct_; }

private:
    std::string construct_;
};

// Semantic problems: undeclared symbols, arity or type mismatches, missing
// initial values, grounding limits.
class InputError : public PddlError {
public:
    using PddlError::PddlError;
};

namespace pddl {

struct TypedName {
    std::string name;
    std::string type = "object";
};

struct Atom {
    std::string predicate;
    std::vector<std::string> args;  // "?x" for parameters, object names otherwise
};

struct NumExpr {
    enum class Kind { Number, Fluent, Add, Sub, Mul, Div, Neg };
    Kind kind = Kind::Number;
    Rational value{0};
    Atom fluent;
    std::vector<NumExpr> children;
};

struct Comparison {
    CmpOp op = CmpOp::GreaterEq;
    NumExpr lhs;
    NumExpr rhs;
};

// Conjunction of atoms and numeric comparisons.
struct Condition {
    std::vector<Atom> atoms;
    std::vector<Comparison> comparisons;
};

struct NumericEffectSpec {
    EffectOp op = EffectOp::Increase;
    Atom fluent;
    NumExpr value;
};

struct Effect {
    std::vector<Atom> adds;
    std::vector<Atom> dels;
    std::vector<NumericEffectSpec> numeric;
};

struct ActionSchema {
    std::string name;
    std::vector<TypedName> parameters;
    Condition precondition;
    Effect effect;
};

struct Signature {
    std::string name;
    std::vector<TypedName> params;
};

struct DomainAST {
    std::string name;
    std::vector<std::string> requirements;
    std::vector<TypedName> types;  // type and its parent
    std::vector<TypedName> constants;
    std::vector<Signature> predicates;
    std::vector<Signature> functions;
    std::vector<ActionSchema> actions;

    const Signature *find_predicate(const std::string &name) const;
    const Signature *find_function(const std::string &name) const;
    bool is_subtype(const std::string &type, const std::string &ancestor) const;
};

struct ProblemAST {
    std::string name;
    std::string domain_name;
    std::vector<TypedName> objects;
    std::vector<Atom> init_atoms;
    std::vector<std::pair<Atom, Rational>> init_values;
    Condition goal;
};

DomainAST parse_domain(std::string_view text);
ProblemAST parse_problem(std::string_view text, const DomainAST &domain);

}  // namespace pddl

struct GroundingOptions {
    std::size_t max_ground_actions = 1000000;
};

GroundTask ground(const pddl::DomainAST &domain, const pddl::ProblemAST &problem,
                  const GroundingOptions &options = {});

std::string read_file(const std::string &path);

// parse_domain + parse_problem + ground on two files.
GroundTask load_task(const std::string &domain_path, const std::string &problem_path,
                     const GroundingOptions &options = {});

}  // namespace lprpg
