#pragma once

#include "lprpg/analysis.h"
#include "lprpg/config.h"
#include "lprpg/flow_model.h"
#include "lprpg/task.h"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lprpg {

struct Interval {
    ExtRational lb;
    ExtRational ub;
    bool contains(const Interval &o) const { return lb <= o.lb && o.ub <= ub; }
    bool operator==(const Interval &o) const = default;
};

using Box = std::vector<Interval>;

// Range of expr over a box of variable intervals.
Interval expr_range(const LinearExpr &expr, const Box &box);
// Some point of the box satisfies the condition on its own.
bool satisfiable(const NumericCondition &c, const Box &box);

enum class RPGStatus { GoalsReached, RelaxedUnsolvable };

enum class CostVariant { Max, Sum };

struct RPGraph {
    RPGStatus status = RPGStatus::RelaxedUnsolvable;
    int final_layer = 0;
    bool hit_layer_cap = false;
    std::vector<int> fact_layer;    // first fact layer, -1 if never reached
    std::vector<int> action_layer;  // first action layer (>= 1), -1 if never
    std::vector<std::vector<ActionId>> new_actions;  // by action layer; [0] empty
    std::vector<Box> bounds;                         // FV(0) .. FV(final)
    // cost(p,t) and cost(a,t); empty unless costs were propagated.
    std::vector<std::vector<double>> fact_cost;
    std::vector<std::vector<double>> action_cost;
    // LP mode only. The model references the evaluated state and the config,
    // which must outlive the graph.
    std::unique_ptr<FlowModel> flow;
    // Solution of the goal-checking model at the final layer, if one was solved.
    std::optional<mp::Solution> goal_solution;

    bool has_fact(FactId f, int layer) const;
    bool has_action(ActionId a, int layer) const;
    // First layer whose bounds satisfy c, -1 if none up to final_layer.
    int condition_layer(const NumericCondition &c) const;
    std::vector<ActionId> actions_up_to(int layer) const;
    std::string dump(const GroundTask &task) const;
};

// Everything the graph needs beyond the task: landmarks for the goal check
// and the per-path achieved flags.
struct ExpandInput {
    const AnalysedTask *task = nullptr;
    const LandmarkSet *landmarks = nullptr;
    const std::vector<bool> *achieved = nullptr;
    LPStats *stats = nullptr;
};

// Interval mode for MetricFF/LPRPGFF/Sapa kinds, LP-tightened bounds for LPRPG.
RPGraph expand(const State &state, const ExpandInput &in, const HeuristicConfig &config);

// Fills fact_cost/action_cost for layers 0..final_layer.
void propagate_costs(RPGraph &g, const GroundTask &task, CostVariant variant);

// Objective weight per action id for the given scheme; actions outside the
// graph get weight 0.
std::vector<double> action_weights(const RPGraph &g, const HeuristicConfig &config, int cost_layer);

IntegralityContext integrality_context(const RPGraph &g, const GroundTask &task, const PCClassification &pc,
                                       const LandmarkSet &landmarks, const std::vector<bool> &achieved,
                                       const State &state);

// Shortfall penalty for the metricff-sapa baseline. Per-variable production
// and consumption are summed over the relaxed plan's (action, count) pairs.
// Returns nullopt when some short variable has no producer at all.
std::optional<long> sapa_penalty(const State &state, const std::vector<std::pair<ActionId, double>> &plan,
                                 const GroundTask &task, const PCClassification &pc);

}  // namespace lprpg
