#include "lp_oracle.h"

#include <cmath>
#include <functional>

namespace oracle {

using lprpg::mp::RowOp;

namespace {

constexpr double kTol = 1e-7;

bool feasible_point(const DenseLP &lp, const std::vector<double> &x) {
    for (int j = 0; j < lp.n; ++j)
        if (x[j] < lp.lb[j] - kTol || x[j] > lp.ub[j] + kTol)
            return false;
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        double s = 0;
        for (int j = 0; j < lp.n; ++j)
            s += lp.rows[i][j] * x[j];
        const double scale = 1 + std::abs(lp.rhs[i]);
        if (lp.ops[i] == RowOp::LessEq && s > lp.rhs[i] + kTol * scale)
            return false;
        if (lp.ops[i] == RowOp::GreaterEq && s < lp.rhs[i] - kTol * scale)
            return false;
        if (lp.ops[i] == RowOp::Equal && std::abs(s - lp.rhs[i]) > kTol * scale)
            return false;
    }
    return true;
}

double objective(const DenseLP &lp, const std::vector<double> &x) {
    double s = 0;
    for (int j = 0; j < lp.n; ++j)
        s += lp.cost[j] * x[j];
    return s;
}

// Gaussian elimination with partial pivoting; false when singular.
bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double> &x) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[p][c]))
                p = r;
        if (std::abs(a[p][c]) < 1e-10)
            return false;
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c)
                continue;
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k)
                a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    x.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = b[i] / a[i][i];
    return true;
}

void consider(const DenseLP &lp, const std::vector<double> &x, OracleOptimum &best) {
    if (!feasible_point(lp, x))
        return;
    const double v = objective(lp, x);
    if (!best.feasible || (lp.maximize ? v > best.objective : v < best.objective)) {
        best.feasible = true;
        best.objective = v;
    }
}

}  // namespace

OracleOptimum vertex_enumeration(const DenseLP &lp) {
    // Candidate hyperplanes: every row and both bounds of every variable.
    std::vector<std::vector<double>> planes;
    std::vector<double> values;
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        planes.push_back(lp.rows[i]);
        values.push_back(lp.rhs[i]);
    }
    for (int j = 0; j < lp.n; ++j)
        for (double bound : {lp.lb[j], lp.ub[j]}) {
            std::vector<double> e(static_cast<std::size_t>(lp.n), 0.0);
            e[static_cast<std::size_t>(j)] = 1;
            planes.push_back(e);
            values.push_back(bound);
        }
    OracleOptimum best;
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> choose = [&](std::size_t from) {
        if (static_cast<int>(pick.size()) == lp.n) {
            std::vector<std::vector<double>> a;
            std::vector<double> b;
            for (auto i : pick) {
                a.push_back(planes[i]);
                b.push_back(values[i]);
            }
            std::vector<double> x;
            if (solve_square(a, b, x))
                consider(lp, x, best);
            return;
        }
        for (std::size_t i = from; i < planes.size(); ++i) {
            pick.push_back(i);
            choose(i + 1);
            pick.pop_back();
        }
    };
    choose(0);
    return best;
}

OracleOptimum lattice_enumeration(const DenseLP &lp) {
    OracleOptimum best;
    std::vector<double> x(static_cast<std::size_t>(lp.n));
    std::function<void(int)> walk = [&](int j) {
        if (j == lp.n) {
            consider(lp, x, best);
            return;
        }
        for (double v = std::ceil(lp.lb[j]); v <= lp.ub[j]; v += 1) {
            x[static_cast<std::size_t>(j)] = v;
            walk(j + 1);
        }
    };
    walk(0);
    return best;
}

lprpg::mp::MPModel to_model(const DenseLP &lp) {
    lprpg::mp::MPModel m;
    lprpg::mp::Terms obj;
    for (int j = 0; j < lp.n; ++j) {
        m.add_variable(lp.lb[j], lp.ub[j],
                       lp.integer ? lprpg::mp::VarKind::Integer : lprpg::mp::VarKind::Continuous);
        obj.emplace_back(j, lp.cost[j]);
    }
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        lprpg::mp::Terms t;
        for (int j = 0; j < lp.n; ++j)
            if (lp.rows[i][j] != 0)
                t.emplace_back(j, lp.rows[i][j]);
        m.add_constraint(t, lp.ops[i], lp.rhs[i]);
    }
    m.set_objective(obj, lp.maximize ? lprpg::mp::Sense::Maximize : lprpg::mp::Sense::Minimize);
    return m;
}

DenseLP random_lp(std::mt19937 &rng, bool integer) {
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    DenseLP lp;
    lp.integer = integer;
    lp.n = uni(2, 4);
    const int m = uni(1, 4);
    std::vector<double> x0;
    for (int j = 0; j < lp.n; ++j) {
        lp.lb.push_back(uni(-3, 0));
        lp.ub.push_back(uni(1, 5));
        lp.cost.push_back(uni(-5, 5));
        x0.push_back(uni(static_cast<int>(lp.lb.back()), static_cast<int>(lp.ub.back())));
    }
    lp.maximize = uni(0, 1) == 1;
    for (int i = 0; i < m; ++i) {
        std::vector<double> row;
        double at = 0;
        for (int j = 0; j < lp.n; ++j) {
            row.push_back(uni(-5, 5));
            at += row.back() * x0[static_cast<std::size_t>(j)];
        }
        const int kind = uni(0, 5);
        const RowOp op = kind == 0 ? RowOp::Equal : kind <= 2 ? RowOp::LessEq : RowOp::GreaterEq;
        // Mostly satisfied by x0; sometimes pushed the wrong way.
        const int slack = uni(-2, 6);
        double rhs = at;
        if (op == RowOp::LessEq)
            rhs = at + slack;
        else if (op == RowOp::GreaterEq)
            rhs = at - slack;
        else if (uni(0, 4) == 0)
            rhs = at + uni(1, 3);
        lp.rows.push_back(row);
        lp.ops.push_back(op);
        lp.rhs.push_back(rhs);
    }
    return lp;
}

}  // namespace oracle
