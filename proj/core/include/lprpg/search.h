#pragma once

#include "lprpg/analysis.h"
#include "lprpg/extract.h"
#include "lprpg/task.h"

#include <functional>
#include <string>
#include <vector>

namespace lprpg {

// Returns h and helpful actions for a state given its path's landmark flags.
using Evaluator = std::function<HeuristicResult(const State &, const std::vector<bool> &)>;

struct SearchOptions {
    bool use_ehc = true;
    bool use_wastar = true;
    double wastar_weight = 5.0;
    int ehc_depth_cap = 20;
    // When helpful-only plateau search fails, retry the plateau with all actions.
    bool ehc_fallback = true;
    long max_expansions = 1000000;  // across both phases
    double time_limit_s = 1800;
};

enum class SearchStatus { Solved, Exhausted, RootDeadEnd };

const char *to_string(SearchStatus s);

struct SearchResult {
    SearchStatus status = SearchStatus::Exhausted;
    std::vector<ActionId> plan;
    long expanded = 0;
    long evaluated = 0;
    std::string solved_by;              // "ehc", "wastar" or "root"
    std::vector<double> ehc_incumbents;  // h at each accepted EHC incumbent
    bool budget_hit = false;
};

// EHC, then WA* if EHC fails and use_wastar is set.
SearchResult plan_search(const GroundTask &task, const LandmarkSet &landmarks, const Evaluator &eval,
                         const SearchOptions &options);
SearchResult ehc(const GroundTask &task, const LandmarkSet &landmarks, const Evaluator &eval,
                 const SearchOptions &options);
SearchResult wastar(const GroundTask &task, const LandmarkSet &landmarks, const Evaluator &eval,
                    const SearchOptions &options);

std::vector<ActionId> applicable_actions(const GroundTask &task, const State &s);

// ---- plans ---------------------------------------------------------------

struct ValidationReport {
    bool ok = true;
    int failed_step = -1;  // plan.size() when only the goal check failed
    std::string message;
};

ValidationReport validate_plan(const GroundTask &task, const std::vector<ActionId> &plan);

// "0: (load v1 p1 timber)" per line.
std::string format_plan(const GroundTask &task, const std::vector<ActionId> &plan);
// Accepts the format above, bare "(name args)" lines and ';' comments.
// Throws InputError on unknown actions.
std::vector<ActionId> parse_plan(const GroundTask &task, const std::string &text);

}  // namespace lprpg
