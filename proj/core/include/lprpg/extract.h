#pragma once

#include "lprpg/rpg.h"

#include <cmath>
#include <vector>

namespace lprpg {

struct TraceEntry {
    ActionId action = -1;
    double count = 1;
    int layer = 0;  // layer the action was chosen at
    double weight = 1;
};

struct HeuristicResult {
    double h = 0;  // +inf for dead ends
    std::vector<ActionId> helpful;  // sorted
    std::vector<TraceEntry> trace;
    std::vector<double> lp_objectives;  // goal-check and subgoal LPs, in solve order
    int lp_calls = 0;
    bool fell_back = false;  // LP budget exhausted, metricff extraction used

    bool dead_end() const { return std::isinf(h); }
    // (action, total count) over the trace.
    std::vector<std::pair<ActionId, double>> plan_counts() const;
};

HeuristicResult dead_end_result();

// Backward relaxed-plan extraction over interval bounds. With cycle_increasers set, an increaser may be chosen
// repeatedly within one layer (for graphs built with unbounded applications).
HeuristicResult extract_metricff(const RPGraph &g, const GroundTask &task, const PCClassification &pc,
                                 const State &state, bool cycle_increasers = false);

// Relaxed-plan extraction where numeric subgoals are solved over the graph's
// flow model.
HeuristicResult extract_lprpg(RPGraph &g, const GroundTask &task, const PCClassification &pc, const State &state,
                              const LandmarkSet &landmarks, const std::vector<bool> &achieved,
                              const HeuristicConfig &config);

// Applicable actions sharing an effect with one of the layer-one choices:
// the same added fact, or a change in the same useful direction on the same
// variable.
std::vector<ActionId> helpful_actions(const GroundTask &task, const PCClassification &pc, const State &state,
                                      const std::vector<ActionId> &layer_one);

std::string trace_to_string(const HeuristicResult &r, const GroundTask &task);

}  // namespace lprpg
