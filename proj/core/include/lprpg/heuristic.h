#pragma once

#include "lprpg/analysis.h"
#include "lprpg/config.h"
#include "lprpg/extract.h"
#include "lprpg/rpg.h"

#include <string>
#include <vector>

namespace lprpg {

struct HeuristicStats {
    long evaluations = 0;
    long dead_ends = 0;
    long budget_fallbacks = 0;
    long rpg_layers = 0;
    LPStats lp;
};

// Per-state evaluation: expand, then extract with the configured kind.
class Heuristic {
public:
    Heuristic(const AnalysedTask &task, const LandmarkSet &landmarks, HeuristicConfig config);

    HeuristicResult evaluate(const State &state, const std::vector<bool> &achieved);
    // Expansion only, for diagnostics and tests.
    RPGraph expand_graph(const State &state, const std::vector<bool> &achieved);

    // Effective config; differs from the requested one after a fallback.
    const HeuristicConfig &config() const { return config_; }
    // Non-empty when the LP heuristic was replaced by metricff.
    const std::string &fallback_reason() const { return fallback_reason_; }
    const HeuristicStats &stats() const { return stats_; }
    const AnalysedTask &task() const { return task_; }
    const LandmarkSet &landmarks() const { return landmarks_; }

private:
    const AnalysedTask &task_;
    const LandmarkSet &landmarks_;
    HeuristicConfig config_;
    std::string fallback_reason_;
    HeuristicStats stats_;
};

// Variables mentioned by some numeric precondition or goal that the LP
// encoding cannot represent; empty when the LP heuristic applies.
std::vector<VarId> blocking_variables(const AnalysedTask &task);

}  // namespace lprpg
