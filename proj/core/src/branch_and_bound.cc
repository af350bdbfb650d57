#include "mp_internal.h"

#include <cmath>

namespace lprpg::mp {

Solution solve(const MPModel &model, const SolverOptions &options) {
    if (!model.has_integers())
        return solve_lp(model, options);

    struct Node {
        std::vector<double> lb, ub;
    };
    Node root;
    for (const auto &v : model.variables()) {
        root.lb.push_back(v.lb);
        root.ub.push_back(v.ub);
    }
    // Internally everything is minimised.
    const double sense = model.sense() == Sense::Maximize ? -1.0 : 1.0;
    Solution best;
    best.status = Status::Infeasible;
    bool have_incumbent = false;
    double incumbent = kInf;
    long nodes = 0, pivots = 0;
    bool limit = false;
    std::vector<Node> stack;
    stack.push_back(std::move(root));
    while (!stack.empty()) {
        if (nodes >= options.max_nodes || pivots >= options.max_pivots) {
            limit = true;
            break;
        }
        Node node = std::move(stack.back());
        stack.pop_back();
        ++nodes;
        Solution r = detail::solve_lp_bounds(model, node.lb, node.ub, options, options.max_pivots - pivots);
        pivots += r.pivots;
        if (r.status == Status::LimitReached) {
            limit = true;
            break;
        }
        if (r.status == Status::Unbounded) {
            if (nodes == 1) {
                best.status = Status::Unbounded;
                best.nodes = nodes;
                best.pivots = pivots;
                return best;
            }
            continue;
        }
        if (r.status != Status::Optimal)
            continue;
        const double obj = sense * r.objective;
        if (have_incumbent && obj >= incumbent - 1e-9)
            continue;
        int branch = -1;
        for (std::size_t j = 0; j < r.values.size(); ++j) {
            if (model.variables()[j].kind == VarKind::Continuous)
                continue;
            const double x = r.values[j];
            if (std::fabs(x - std::round(x)) > options.integrality_tol) {
                branch = static_cast<int>(j);
                break;
            }
        }
        if (branch < 0) {
            for (std::size_t j = 0; j < r.values.size(); ++j)
                if (model.variables()[j].kind != VarKind::Continuous)
                    r.values[j] = std::round(r.values[j]);
            have_incumbent = true;
            incumbent = obj;
            best = r;
            continue;
        }
        const auto b = static_cast<std::size_t>(branch);
        const double x = r.values[b];
        Node up = node;
        up.lb[b] = std::ceil(x);
        Node down = std::move(node);
        down.ub[b] = std::floor(x);
        // Floor branch is explored first.
        stack.push_back(std::move(up));
        stack.push_back(std::move(down));
    }
    if (limit) {
        best.status = Status::LimitReached;
        if (!have_incumbent)
            best.values.clear();
    } else if (have_incumbent) {
        best.status = Status::Optimal;
    } else {
        best.status = Status::Infeasible;
        best.values.clear();
    }
    best.nodes = nodes;
    best.pivots = pivots;
    return best;
}

}  // namespace lprpg::mp
