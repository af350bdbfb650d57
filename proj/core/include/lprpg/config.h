#pragma once

#include "lprpg/mp.h"

#include <string>

namespace lprpg {

enum class HeuristicKind { LPRPG, MetricFF, MetricFFSapa, LPRPGFF };
enum class WeightScheme { Layer, HAdd, HMax };
enum class IntegralityPolicy { Minimal, FirstLayer, PropGoal, NumGoal, All };

const char *to_string(HeuristicKind k);
const char *to_string(WeightScheme w);
const char *to_string(IntegralityPolicy p);

HeuristicKind parse_heuristic_kind(const std::string &s);
IntegralityPolicy parse_integrality(const std::string &s);

struct HeuristicConfig {
    HeuristicKind kind = HeuristicKind::LPRPG;
    WeightScheme weight = WeightScheme::Layer;
    double layer_k = 3.0;
    IntegralityPolicy ints = IntegralityPolicy::FirstLayer;
    bool lp_prop_goals = true;
    bool lp_landmarks = true;
    bool lp_all_props = false;
    bool lp_num_goal_conjunct = true;

    int max_layers = 200;
    int lp_call_budget = 500;  // per evaluated state, during extraction
    double count_cap = 1e6;
    // Skip LP bound queries on sides where every condition is already
    // satisfiable (the previous bound is reused).
    bool reuse_satisfied_bounds = true;
    mp::SolverOptions solver;

    // Parses "k:<float>", "hadd" or "hmax".
    void set_weight(const std::string &spec);
    // Throws std::invalid_argument when the flag combination is inconsistent.
    void validate() const;
    // Stable one-line description, used in stats output.
    std::string fingerprint() const;

    bool uses_lp() const { return kind == HeuristicKind::LPRPG; }
    bool goal_rows() const { return lp_prop_goals || lp_landmarks || lp_all_props || lp_num_goal_conjunct; }
};

}  // namespace lprpg
