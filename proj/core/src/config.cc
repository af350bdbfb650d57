#include "lprpg/config.h"

#include <sstream>
#include <stdexcept>

namespace lprpg {

const char *to_string(HeuristicKind k) {
    switch (k) {
    case HeuristicKind::LPRPG: return "lprpg";
    case HeuristicKind::MetricFF: return "metricff";
    case HeuristicKind::MetricFFSapa: return "metricff-sapa";
    case HeuristicKind::LPRPGFF: return "lprpg-ff";
    }
    return "?";
}

const char *to_string(WeightScheme w) {
    switch (w) {
    case WeightScheme::Layer: return "layer";
    case WeightScheme::HAdd: return "hadd";
    case WeightScheme::HMax: return "hmax";
    }
    return "?";
}

const char *to_string(IntegralityPolicy p) {
    switch (p) {
    case IntegralityPolicy::Minimal: return "minimal";
    case IntegralityPolicy::FirstLayer: return "first-layer";
    case IntegralityPolicy::PropGoal: return "prop-goal";
    case IntegralityPolicy::NumGoal: return "num-goal";
    case IntegralityPolicy::All: return "all";
    }
    return "?";
}

HeuristicKind parse_heuristic_kind(const std::string &s) {
    for (auto k : {HeuristicKind::LPRPG, HeuristicKind::MetricFF, HeuristicKind::MetricFFSapa, HeuristicKind::LPRPGFF})
        if (s == to_string(k))
            return k;
    throw std::invalid_argument("unknown heuristic '" + s + "'");
}

IntegralityPolicy parse_integrality(const std::string &s) {
    for (auto p : {IntegralityPolicy::Minimal, IntegralityPolicy::FirstLayer, IntegralityPolicy::PropGoal,
                   IntegralityPolicy::NumGoal, IntegralityPolicy::All})
        if (s == to_string(p))
            return p;
    throw std::invalid_argument("unknown integrality policy '" + s + "'");
}

void HeuristicConfig::set_weight(const std::string &spec) {
    if (spec == "hadd") {
        weight = WeightScheme::HAdd;
        return;
    }
    if (spec == "hmax") {
        weight = WeightScheme::HMax;
        return;
    }
    if (spec.rfind("k:", 0) == 0) {
        std::size_t used = 0;
        double k = 0;
        try {
            k = std::stod(spec.substr(2), &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != spec.size() - 2)
            throw std::invalid_argument("bad weight '" + spec + "'");
        weight = WeightScheme::Layer;
        layer_k = k;
        return;
    }
    throw std::invalid_argument("bad weight '" + spec + "' (expected k:<float>, hadd or hmax)");
}

void HeuristicConfig::validate() const {
    if (weight == WeightScheme::Layer && !(layer_k >= 1.0))
        throw std::invalid_argument("layer weight k must be >= 1");
    if (lp_landmarks && !lp_prop_goals)
        throw std::invalid_argument("landmarks in the LP require propositional goals in the LP");
    if (lp_all_props && !lp_landmarks)
        throw std::invalid_argument("the all-propositions encoding requires landmarks in the LP");
    if (max_layers < 1)
        throw std::invalid_argument("max_layers must be positive");
    if (lp_call_budget < 1)
        throw std::invalid_argument("lp call budget must be positive");
    if (!(count_cap >= 1))
        throw std::invalid_argument("count cap must be >= 1");
}

std::string HeuristicConfig::fingerprint() const {
    std::ostringstream os;
    os << to_string(kind);
    if (kind == HeuristicKind::LPRPG) {
        os << " weight=";
        if (weight == WeightScheme::Layer)
            os << "k:" << layer_k;
        else
            os << to_string(weight);
        os << " ints=" << to_string(ints) << " prop-goals=" << lp_prop_goals << " landmarks=" << lp_landmarks
           << " all-props=" << lp_all_props << " num-goal=" << lp_num_goal_conjunct;
    }
    return os.str();
}

}  // namespace lprpg
