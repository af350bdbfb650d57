#pragma once

#include "lprpg/rational.h"
#include "lprpg/task.h"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace lprpg {

enum class VarStatus { ProducerConsumer, CatalyticExtended, NonConforming };

const char *to_string(VarStatus s);

struct VariableClass {
    VarStatus status = VarStatus::ProducerConsumer;
    std::string reason;  // violated clause when non-conforming
    ExtRational ub = ExtRational::pos_inf();
    ExtRational lb = ExtRational::neg_inf();
    std::vector<ActionId> prod;
    std::vector<ActionId> cons;
};

struct OneShotSet {
    FactId fact = -1;
    std::vector<ActionId> members;
};

// Actions requiring expr >= rhs (op is always GreaterEq here) while
// affecting none of the variables in expr.
struct CatalyticGroup {
    NumericCondition condition;
    std::vector<ActionId> members;
};

struct PCClassification {
    std::vector<VariableClass> vars;
    // Per action, the signed constant change on each affected variable.
    std::vector<std::map<VarId, Rational>> deltas;
    std::map<std::pair<ActionId, VarId>, ExtRational> max_prod;
    std::map<std::pair<ActionId, VarId>, ExtRational> min_cons;
    std::vector<CatalyticGroup> catalytic;
    std::vector<OneShotSet> one_shot;
    std::vector<Rational> count_bound;  // U_a; filled by compute_count_bounds

    Rational delta(VarId v, ActionId a) const;
    bool all_conforming() const;
    // One line per variable, for debugging output.
    std::vector<std::string> report(const GroundTask &task) const;
};

constexpr double kDefaultCountCap = 1e6;

PCClassification classify(const GroundTask &task);
std::vector<OneShotSet> detect_one_shot_sets(const GroundTask &task);
void compute_count_bounds(const GroundTask &task, PCClassification &pc, Rational cap = Rational(1000000));
// Rewrites gated one-shot assignments v := k into increase (k - v(I)).
// Assignments that do not qualify are left alone; classify() then marks
// their variable non-conforming.
GroundTask rewrite_assignments(const GroundTask &task, const PCClassification &pc);

struct AnalysedTask {
    GroundTask task;
    PCClassification pc;
};

// rewrite_strict_inequalities, classify, rewrite_assignments, classify,
// detect_one_shot_sets, compute_count_bounds.
AnalysedTask analyse(const GroundTask &raw);

// ---- landmarks -----------------------------------------------------------

struct Landmark {
    std::vector<FactId> facts;  // one fact, or a disjunction of 2..4
    bool goal = false;          // a goal fact: achieved only while it holds
    bool disjunctive() const { return facts.size() > 1; }
};

struct LandmarkSet {
    std::vector<Landmark> landmarks;

    std::size_t size() const { return landmarks.size(); }
    std::vector<std::string> report(const GroundTask &task) const;
};

struct LandmarkOptions {
    std::size_t max_disjunction = 4;
    std::size_t count_factor = 10;  // cap = factor * number of goals
};

LandmarkSet extract_landmarks(const GroundTask &task, const State &state, const LandmarkOptions &options = {});

// Propositional delete-relaxed reachability from state, ignoring numeric
// conditions, with the given actions disabled.
std::vector<bool> relaxed_reachable_facts(const GroundTask &task, const State &state,
                                          const std::vector<bool> &disabled = {});

// Per-path landmark bookkeeping: flag i is set once landmark i held in some
// state on the path. Goal landmarks are re-checked against s every time.
std::vector<bool> initial_achieved(const LandmarkSet &lms, const State &root);
void update_achieved(const LandmarkSet &lms, const State &s, std::vector<bool> &achieved);

}  // namespace lprpg
