#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lprpg::mp {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { Continuous, Integer, Binary };
enum class RowOp { LessEq, GreaterEq, Equal };
enum class Sense { Minimize, Maximize };
enum class Status { Optimal, Infeasible, Unbounded, LimitReached };

const char *to_string(Status s);

using Terms = std::vector<std::pair<int, double>>;

struct Variable {
    double lb = 0;
    double ub = kInf;
    VarKind kind = VarKind::Continuous;
    std::string name;
};

struct Constraint {
    Terms terms;
    RowOp op = RowOp::LessEq;
    double rhs = 0;
    std::string name;
};

class ModelError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class MPModel {
public:
    int add_variable(double lb, double ub, VarKind kind = VarKind::Continuous, std::string name = {});
    int add_constraint(Terms terms, RowOp op, double rhs, std::string name = {});
    // Appends a coefficient to an existing row. Only allowed while no scratch
    // frame is open, so that pop_scratch never has to undo it.
    void add_term(int row, int col, double coefficient);

    void set_objective(const Terms &coefficients, Sense sense);
    void set_objective_coefficient(int col, double coefficient);
    void set_sense(Sense sense) { sense_ = sense; }
    void set_variable_kind(int col, VarKind kind);
    void set_variable_bounds(int col, double lb, double ub);

    void push_scratch();
    void pop_scratch();
    std::size_t scratch_depth() const { return frames_.size(); }

    std::size_t num_variables() const { return vars_.size(); }
    std::size_t num_constraints() const { return rows_.size(); }
    const Variable &variable(int col) const { return vars_.at(static_cast<std::size_t>(col)); }
    const Constraint &constraint(int row) const { return rows_.at(static_cast<std::size_t>(row)); }
    const std::vector<Variable> &variables() const { return vars_; }
    const std::vector<Constraint> &constraints() const { return rows_; }
    const std::vector<double> &objective() const { return objective_; }
    Sense sense() const { return sense_; }
    bool has_integers() const;

private:
    void check_col(int col) const;

    struct Frame {
        std::size_t num_vars;
        std::size_t num_rows;
        std::vector<double> objective;
        Sense sense;
        std::vector<std::pair<int, Variable>> saved;  // previous state of modified columns
    };

    std::vector<Variable> vars_;
    std::vector<Constraint> rows_;
    std::vector<double> objective_;
    Sense sense_ = Sense::Minimize;
    std::vector<Frame> frames_;
};

struct SolverOptions {
    double feasibility_tol = 1e-6;
    double integrality_tol = 1e-6;
    long max_pivots = 100000;
    long max_nodes = 100000;
};

struct Solution {
    Status status = Status::Infeasible;
    double objective = 0;
    std::vector<double> values;
    long pivots = 0;
    long nodes = 0;
};

// Two-phase bounded simplex on the continuous relaxation (kinds ignored).
Solution solve_lp(const MPModel &model, const SolverOptions &options = {});
// solve_lp for continuous models; depth-first branch and bound otherwise.
Solution solve(const MPModel &model, const SolverOptions &options = {});

// CPLEX LP text format.
std::string to_lp_format(const MPModel &model);

}  // namespace lprpg::mp
