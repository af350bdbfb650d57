#include "lprpg/heuristic.h"

#include "lprpg/log.h"

namespace lprpg {

std::vector<VarId> blocking_variables(const AnalysedTask &t) {
    std::vector<bool> mentioned(t.task.num_variables(), false);
    auto mark = [&](const NumericCondition &c) {
        for (const auto &[v, w] : c.expr.coefficients())
            mentioned[static_cast<std::size_t>(v)] = true;
    };
    for (const auto &a : t.task.actions)
        for (const auto &c : a.pre_num)
            mark(c);
    for (const auto &c : t.task.goal_num)
        mark(c);
    std::vector<VarId> out;
    for (std::size_t v = 0; v < mentioned.size(); ++v)
        if (mentioned[v] && t.pc.vars[v].status == VarStatus::NonConforming)
            out.push_back(static_cast<VarId>(v));
    return out;
}

Heuristic::Heuristic(const AnalysedTask &task, const LandmarkSet &landmarks, HeuristicConfig config)
    : task_(task), landmarks_(landmarks), config_(std::move(config)) {
    config_.validate();
    if (config_.uses_lp()) {
        const auto blocking = blocking_variables(task_);
        if (!blocking.empty()) {
            const auto v = static_cast<std::size_t>(blocking.front());
            fallback_reason_ = task_.task.variables[v] + ": " + task_.pc.vars[v].reason;
            log::warn("task is not producer-consumer conforming (" + fallback_reason_ +
                      "); using the metricff heuristic");
            config_.kind = HeuristicKind::MetricFF;
        }
    }
}

RPGraph Heuristic::expand_graph(const State &state, const std::vector<bool> &achieved) {
    ExpandInput in{&task_, &landmarks_, &achieved, &stats_.lp};
    return expand(state, in, config_);
}

HeuristicResult Heuristic::evaluate(const State &state, const std::vector<bool> &achieved) {
    ++stats_.evaluations;
    const GroundTask &task = task_.task;
    if (is_goal(state, task))
        return {};
    RPGraph g = expand_graph(state, achieved);
    stats_.rpg_layers += g.final_layer;
    if (g.hit_layer_cap)
        log::warn("relaxed planning graph hit the layer cap of " + std::to_string(config_.max_layers));
    if (g.status != RPGStatus::GoalsReached) {
        ++stats_.dead_ends;
        return dead_end_result();
    }
    HeuristicResult r;
    switch (config_.kind) {
    case HeuristicKind::LPRPG:
        r = extract_lprpg(g, task, task_.pc, state, landmarks_, achieved, config_);
        if (r.fell_back) {
            ++stats_.budget_fallbacks;
            log::warn("LP call budget exhausted; metricff extraction used for this state");
        }
        break;
    case HeuristicKind::MetricFF: r = extract_metricff(g, task, task_.pc, state, false); break;
    case HeuristicKind::LPRPGFF: r = extract_metricff(g, task, task_.pc, state, true); break;
    case HeuristicKind::MetricFFSapa: {
        r = extract_metricff(g, task, task_.pc, state, false);
        const auto p = sapa_penalty(state, r.plan_counts(), task, task_.pc);
        if (!p)
            r.h = dead_end_result().h;
        else
            r.h += static_cast<double>(*p);
        break;
    }
    }
    if (r.dead_end())
        ++stats_.dead_ends;
    return r;
}

}  // namespace lprpg
