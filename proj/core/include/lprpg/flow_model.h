#pragma once

#include "lprpg/analysis.h"
#include "lprpg/config.h"
#include "lprpg/mp.h"
#include "lprpg/task.h"

#include <string>
#include <vector>

namespace lprpg {

struct LPStats {
    long solves = 0;
    double build_ms = 0;
    double solve_ms = 0;
    long limit_hits = 0;
};

// Context sets for the integrality policies.
struct IntegralityContext {
    std::vector<bool> first_layer;     // per action id
    std::vector<bool> goal_achievers;  // achievers of unachieved goals/landmarks
    std::vector<bool> num_goal_affectors;
};

// Action-count LP for one state, grown layer by layer. Persistent rows:
// one flow row per tracked variable, one-shot rows, catalytic rows. Goal and
// subgoal rows are only ever added inside scratch frames.
class FlowModel {
public:
    FlowModel(const GroundTask &task, const PCClassification &pc, const State &state,
              const HeuristicConfig &config, LPStats *stats = nullptr);

    // Appends columns for actions first appearing at this layer. Throws
    // std::logic_error for an action affecting a non-conforming variable.
    void add_actions(const std::vector<ActionId> &actions, int layer);

    bool tracked(VarId v) const { return post_[static_cast<std::size_t>(v)] >= 0; }
    int post_column(VarId v) const { return post_[static_cast<std::size_t>(v)]; }
    int up_column(VarId v) const { return up_[static_cast<std::size_t>(v)]; }
    int down_column(VarId v) const { return down_[static_cast<std::size_t>(v)]; }
    int action_column(ActionId a) const { return column_[static_cast<std::size_t>(a)]; }
    int action_layer(ActionId a) const { return layer_[static_cast<std::size_t>(a)]; }
    const std::vector<ActionId> &actions() const { return actions_; }
    int switch_column(std::size_t group) const { return switch_[group]; }
    mp::MPModel &model() { return model_; }
    const mp::MPModel &model() const { return model_; }

    // The following mutate only inside an open scratch frame.
    void push() { model_.push_scratch(); }
    void pop() { model_.pop_scratch(); }
    // LP(l): columns first appearing after layer l are fixed to zero.
    void restrict_to_layer(int layer);
    // Rows over the post-value columns; strict comparisons become non-strict.
    void add_conditions(const std::vector<NumericCondition> &conditions);
    // Goal rows per config: numeric goal conjunct, propositional goals,
    // unachieved landmarks, all-propositions encoding.
    void add_goal_constraints(const LandmarkSet &landmarks, const std::vector<bool> &achieved);
    // Minimise sum weight[a] * C_a; binary columns get weight 0.
    void set_objective(const std::vector<double> &action_weight);
    void apply_integrality(IntegralityPolicy policy, const IntegralityContext &context);

    mp::Solution solve(bool integral);
    // Max or min of v' under the pure LP, never tighter than previous.
    // Infinite results come back as +-inf.
    ExtRational query_bound(VarId v, bool maximize, const ExtRational &previous);

    // Action columns with non-zero value, in column order.
    std::vector<std::pair<ActionId, double>> nonzero_actions(const mp::Solution &s, double tol = 1e-6) const;

    std::string dump_lp() const { return mp::to_lp_format(model_); }

private:
    double action_upper(ActionId a) const;

    const GroundTask &task_;
    const PCClassification &pc_;
    const State &state_;
    const HeuristicConfig &config_;
    LPStats *stats_;
    mp::MPModel model_;
    std::vector<int> post_, up_, down_;
    std::vector<int> flow_row_, up_row_, down_row_;
    std::vector<int> column_, layer_;
    std::vector<ActionId> actions_;
    // one-shot set index -> row (only for sets whose fact holds in state)
    std::vector<int> one_shot_row_;
    // catalytic group index -> switch column / rows (-1 when inactive)
    std::vector<int> switch_, cat_count_row_;
};

}  // namespace lprpg
