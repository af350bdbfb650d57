#include "lprpg/mp.h"

#include <algorithm>

namespace lprpg::mp {

const char *to_string(Status s) {
    switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::LimitReached: return "limit-reached";
    }
    return "?";
}

void MPModel::check_col(int col) const {
    if (col < 0 || static_cast<std::size_t>(col) >= vars_.size())
        throw ModelError("column index out of range: " + std::to_string(col));
}

int MPModel::add_variable(double lb, double ub, VarKind kind, std::string name) {
    if (kind == VarKind::Binary) {
        lb = std::max(lb, 0.0);
        ub = std::min(ub, 1.0);
    }
    if (lb > ub)
        throw ModelError("variable lower bound exceeds upper bound");
    vars_.push_back({lb, ub, kind, std::move(name)});
    objective_.push_back(0);
    return static_cast<int>(vars_.size() - 1);
}

int MPModel::add_constraint(Terms terms, RowOp op, double rhs, std::string name) {
    for (const auto &[c, w] : terms)
        check_col(c);
    rows_.push_back({std::move(terms), op, rhs, std::move(name)});
    return static_cast<int>(rows_.size() - 1);
}

void MPModel::add_term(int row, int col, double coefficient) {
    if (!frames_.empty())
        throw ModelError("add_term while a scratch frame is open");
    if (row < 0 || static_cast<std::size_t>(row) >= rows_.size())
        throw ModelError("row index out of range: " + std::to_string(row));
    check_col(col);
    rows_[static_cast<std::size_t>(row)].terms.emplace_back(col, coefficient);
}

void MPModel::set_objective(const Terms &coefficients, Sense sense) {
    std::fill(objective_.begin(), objective_.end(), 0.0);
    for (const auto &[c, w] : coefficients) {
        check_col(c);
        objective_[static_cast<std::size_t>(c)] += w;
    }
    sense_ = sense;
}

void MPModel::set_objective_coefficient(int col, double coefficient) {
    check_col(col);
    objective_[static_cast<std::size_t>(col)] = coefficient;
}

void MPModel::set_variable_kind(int col, VarKind kind) {
    check_col(col);
    auto &v = vars_[static_cast<std::size_t>(col)];
    if (!frames_.empty())
        frames_.back().saved.emplace_back(col, v);
    v.kind = kind;
    if (kind == VarKind::Binary) {
        v.lb = std::max(v.lb, 0.0);
        v.ub = std::min(v.ub, 1.0);
    }
}

void MPModel::set_variable_bounds(int col, double lb, double ub) {
    check_col(col);
    if (lb > ub)
        throw ModelError("variable lower bound exceeds upper bound");
    auto &v = vars_[static_cast<std::size_t>(col)];
    if (!frames_.empty())
        frames_.back().saved.emplace_back(col, v);
    v.lb = lb;
    v.ub = ub;
}

void MPModel::push_scratch() {
    frames_.push_back({vars_.size(), rows_.size(), objective_, sense_, {}});
}

void MPModel::pop_scratch() {
    if (frames_.empty())
        throw ModelError("pop_scratch without a matching push_scratch");
    Frame f = std::move(frames_.back());
    frames_.pop_back();
    for (auto it = f.saved.rbegin(); it != f.saved.rend(); ++it)
        if (static_cast<std::size_t>(it->first) < vars_.size())
            vars_[static_cast<std::size_t>(it->first)] = it->second;
    vars_.resize(f.num_vars);
    rows_.resize(f.num_rows);
    objective_ = std::move(f.objective);
    sense_ = f.sense;
}

bool MPModel::has_integers() const {
    return std::any_of(vars_.begin(), vars_.end(), [](const Variable &v) { return v.kind != VarKind::Continuous; });
}

}  // namespace lprpg::mp
