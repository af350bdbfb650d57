#include "mp_internal.h"

#include <algorithm>
#include <cmath>

namespace lprpg::mp {
namespace detail {
namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr int kDegenerateRunBeforeBland = 50;

// x_j = offset + sign * y[col] (+ sign2 * y[col2] for free columns).
struct ColMap {
    int col = -1;
    double sign = 1;
    int col2 = -1;
    double offset = 0;
};

class Tableau {
public:
    Tableau(std::size_t m, std::size_t n) : m_(m), n_(n), t_(m * n, 0.0) {}
    double &at(std::size_t i, std::size_t j) { return t_[i * n_ + j]; }
    double at(std::size_t i, std::size_t j) const { return t_[i * n_ + j]; }
    double *row(std::size_t i) { return &t_[i * n_]; }

    void pivot(std::size_t r, std::size_t q) {
        double *pr = row(r);
        const double inv = 1.0 / pr[q];
        for (std::size_t j = 0; j < n_; ++j)
            pr[j] *= inv;
        pr[q] = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r)
                continue;
            double *pi = row(i);
            const double f = pi[q];
            if (f == 0.0)
                continue;
            for (std::size_t j = 0; j < n_; ++j)
                if (pr[j] != 0.0)
                    pi[j] -= f * pr[j];
            pi[q] = 0.0;
        }
    }

private:
    std::size_t m_, n_;
    std::vector<double> t_;
};

class Simplex {
public:
    Simplex(const MPModel &model, const std::vector<double> &lb, const std::vector<double> &ub,
            const SolverOptions &options, long budget)
        : model_(model), opts_(options), budget_(budget) {
        build(lb, ub);
    }

    Solution run() {
        Solution sol;
        if (trivially_infeasible_) {
            sol.status = Status::Infeasible;
            return sol;
        }
        // Phase 1.
        if (num_artificial_ > 0) {
            std::vector<double> c1(n_, 0.0);
            for (std::size_t j = first_artificial_; j < n_; ++j)
                c1[j] = 1.0;
            Status s = iterate(c1, /*allow_artificial=*/true);
            sol.pivots = pivots_;
            if (s == Status::LimitReached) {
                sol.status = s;
                return sol;
            }
            double infeas = 0, scale = 0;
            for (std::size_t i = 0; i < m_; ++i) {
                scale = std::max(scale, std::fabs(beta_[i]));
                if (basis_[i] >= first_artificial_)
                    infeas += beta_[i];
            }
            for (double b : rhs_)
                scale = std::max(scale, std::fabs(b));
            if (infeas > opts_.feasibility_tol + 1e-9 * scale) {
                sol.status = Status::Infeasible;
                return sol;
            }
            drive_out_artificials();
        }
        std::vector<double> c2(n_, 0.0);
        for (std::size_t j = 0; j < n_; ++j)
            c2[j] = cost_[j];
        Status s = iterate(c2, false);
        sol.pivots = pivots_;
        if (s != Status::Optimal) {
            sol.status = s;
            return sol;
        }
        std::vector<double> y(n_, 0.0);
        for (std::size_t j = 0; j < n_; ++j)
            if (!is_basic_[j] && at_upper_[j])
                y[j] = ub_[j];
        for (std::size_t i = 0; i < m_; ++i)
            y[basis_[i]] = beta_[i];
        sol.values.resize(model_.num_variables());
        sol.objective = 0;
        for (std::size_t j = 0; j < map_.size(); ++j) {
            const ColMap &cm = map_[j];
            double x = cm.offset + cm.sign * y[static_cast<std::size_t>(cm.col)];
            if (cm.col2 >= 0)
                x -= y[static_cast<std::size_t>(cm.col2)];
            sol.values[j] = x;
            sol.objective += model_.objective()[j] * x;
        }
        sol.status = Status::Optimal;
        return sol;
    }

private:
    void build(const std::vector<double> &lb, const std::vector<double> &ub) {
        const std::size_t nv = model_.num_variables();
        map_.resize(nv);
        const double sense = model_.sense() == Sense::Maximize ? -1.0 : 1.0;
        for (std::size_t j = 0; j < nv; ++j) {
            ColMap &cm = map_[j];
            const double c = sense * model_.objective()[j];
            if (std::isfinite(lb[j])) {
                cm.col = new_col(ub[j] - lb[j], c);
                cm.offset = lb[j];
            } else if (std::isfinite(ub[j])) {
                cm.col = new_col(kInf, -c);
                cm.sign = -1;
                cm.offset = ub[j];
            } else {
                cm.col = new_col(kInf, c);
                cm.col2 = new_col(kInf, -c);
            }
        }
        structural_ = ub_.size();
        const auto &rows = model_.constraints();
        m_ = rows.size();
        // Dense row coefficients over structural columns, then slacks.
        std::vector<std::vector<double>> a(m_, std::vector<double>(structural_, 0.0));
        rhs_.assign(m_, 0.0);
        std::vector<int> slack_of(m_, -1);
        std::vector<double> slack_sign(m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            double b = rows[i].rhs;
            for (const auto &[col, w] : rows[i].terms) {
                const ColMap &cm = map_[static_cast<std::size_t>(col)];
                a[i][static_cast<std::size_t>(cm.col)] += w * cm.sign;
                if (cm.col2 >= 0)
                    a[i][static_cast<std::size_t>(cm.col2)] -= w;
                b -= w * cm.offset;
            }
            rhs_[i] = b;
            if (rows[i].op != RowOp::Equal) {
                slack_of[i] = new_col(kInf, 0.0);
                slack_sign[i] = rows[i].op == RowOp::LessEq ? 1.0 : -1.0;
            }
        }
        // Rows with no structural terms can be decided immediately.
        for (std::size_t i = 0; i < m_; ++i) {
            bool empty = std::all_of(a[i].begin(), a[i].end(), [](double x) { return x == 0.0; });
            if (!empty)
                continue;
            const double b = rhs_[i];
            const double tol = opts_.feasibility_tol;
            bool ok = rows[i].op == RowOp::LessEq ? 0 <= b + tol
                    : rows[i].op == RowOp::GreaterEq ? 0 >= b - tol
                                                    : std::fabs(b) <= tol;
            if (!ok)
                trivially_infeasible_ = true;
        }
        std::vector<double> sign(m_, 1.0);
        std::vector<bool> needs_artificial(m_, true);
        for (std::size_t i = 0; i < m_; ++i) {
            if (rhs_[i] < 0)
                sign[i] = -1.0;
            if (slack_of[i] >= 0 && slack_sign[i] * sign[i] > 0)
                needs_artificial[i] = false;
        }
        first_artificial_ = ub_.size();
        std::vector<int> art_of(m_, -1);
        for (std::size_t i = 0; i < m_; ++i)
            if (needs_artificial[i]) {
                art_of[i] = new_col(kInf, 0.0);
                ++num_artificial_;
            }
        n_ = ub_.size();
        tab_ = Tableau(m_, n_);
        basis_.assign(m_, 0);
        is_basic_.assign(n_, false);
        at_upper_.assign(n_, false);
        beta_.assign(m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < structural_; ++j)
                tab_.at(i, j) = sign[i] * a[i][j];
            if (slack_of[i] >= 0)
                tab_.at(i, static_cast<std::size_t>(slack_of[i])) = sign[i] * slack_sign[i];
            rhs_[i] *= sign[i];
            std::size_t b = needs_artificial[i] ? static_cast<std::size_t>(art_of[i])
                                                : static_cast<std::size_t>(slack_of[i]);
            if (needs_artificial[i])
                tab_.at(i, b) = 1.0;
            basis_[i] = b;
            is_basic_[b] = true;
            beta_[i] = rhs_[i];
        }
        // Columns fixed by their bounds at zero width start at lower.
    }

    int new_col(double ub, double cost) {
        ub_.push_back(ub);
        cost_.push_back(cost);
        return static_cast<int>(ub_.size() - 1);
    }

    Status iterate(const std::vector<double> &c, bool allow_artificial) {
        // Reduced costs d = c - c_B^T T.
        std::vector<double> d = c;
        for (std::size_t i = 0; i < m_; ++i) {
            const double cb = c[basis_[i]];
            if (cb == 0.0)
                continue;
            for (std::size_t j = 0; j < n_; ++j)
                d[j] -= cb * tab_.at(i, j);
        }
        int degenerate_run = 0;
        bool bland = false;
        for (;;) {
            const std::size_t limit_j = allow_artificial ? n_ : first_artificial_;
            std::size_t q = n_;
            double best = 0;
            for (std::size_t j = 0; j < limit_j; ++j) {
                if (is_basic_[j] || ub_[j] <= 0.0)
                    continue;
                double score = at_upper_[j] ? d[j] : -d[j];
                if (score <= kCostTol)
                    continue;
                if (bland) {
                    q = j;
                    break;
                }
                if (score > best) {
                    best = score;
                    q = j;
                }
            }
            if (q == n_)
                return Status::Optimal;
            if (pivots_ >= budget_)
                return Status::LimitReached;
            const double dir = at_upper_[q] ? -1.0 : 1.0;
            double step = ub_[q];  // bound flip
            std::size_t leave = m_;
            double leave_alpha = 0;
            for (std::size_t i = 0; i < m_; ++i) {
                const double alpha = dir * tab_.at(i, q);
                double lim;
                if (alpha > kPivotTol) {
                    lim = std::max(0.0, beta_[i]) / alpha;
                } else if (alpha < -kPivotTol && std::isfinite(ub_[basis_[i]])) {
                    lim = std::max(0.0, ub_[basis_[i]] - beta_[i]) / -alpha;
                } else {
                    continue;
                }
                // Ties with a bound flip keep the flip; ties between rows go
                // to the lowest basic index under Bland, else the largest pivot.
                bool better = false;
                if (lim < step - 1e-12)
                    better = true;
                else if (lim <= step + 1e-12 && leave != m_)
                    better = bland ? basis_[i] < basis_[leave] : std::fabs(alpha) > std::fabs(leave_alpha);
                if (better) {
                    step = lim;
                    leave = i;
                    leave_alpha = alpha;
                }
            }
            if (!std::isfinite(step))
                return Status::Unbounded;
            ++pivots_;
            if (step <= 1e-12) {
                if (++degenerate_run > kDegenerateRunBeforeBland)
                    bland = true;
            } else {
                degenerate_run = 0;
            }
            for (std::size_t i = 0; i < m_; ++i)
                beta_[i] -= dir * step * tab_.at(i, q);
            if (leave == m_) {
                at_upper_[q] = !at_upper_[q];
                continue;
            }
            const std::size_t out = basis_[leave];
            const double entering_value = (at_upper_[q] ? ub_[q] : 0.0) + dir * step;
            // The leaving variable sits at the bound it hit.
            at_upper_[out] = leave_alpha < 0;
            is_basic_[out] = false;
            tab_.pivot(leave, q);
            basis_[leave] = q;
            is_basic_[q] = true;
            at_upper_[q] = false;
            beta_[leave] = entering_value;
            const double dq = d[q];
            if (dq != 0.0) {
                for (std::size_t j = 0; j < n_; ++j)
                    d[j] -= dq * tab_.at(leave, j);
            }
            d[q] = 0.0;
        }
    }

    void drive_out_artificials() {
        for (std::size_t r = 0; r < m_; ++r) {
            if (basis_[r] < first_artificial_)
                continue;
            std::size_t q = n_;
            double best = kPivotTol;
            for (std::size_t j = 0; j < first_artificial_; ++j) {
                if (is_basic_[j])
                    continue;
                if (std::fabs(tab_.at(r, j)) > best) {
                    best = std::fabs(tab_.at(r, j));
                    q = j;
                }
            }
            if (q == n_)
                continue;  // redundant row; the artificial stays basic at zero
            const std::size_t out = basis_[r];
            const double value = at_upper_[q] ? ub_[q] : 0.0;
            is_basic_[out] = false;
            at_upper_[out] = false;
            tab_.pivot(r, q);
            basis_[r] = q;
            is_basic_[q] = true;
            at_upper_[q] = false;
            beta_[r] = value;
        }
        for (std::size_t j = first_artificial_; j < n_; ++j)
            ub_[j] = 0.0;
    }

    const MPModel &model_;
    SolverOptions opts_;
    long budget_;
    long pivots_ = 0;
    std::vector<ColMap> map_;
    std::vector<double> ub_;
    std::vector<double> cost_;
    std::vector<double> rhs_;
    std::size_t structural_ = 0;
    std::size_t first_artificial_ = 0;
    std::size_t num_artificial_ = 0;
    std::size_t m_ = 0;
    std::size_t n_ = 0;
    Tableau tab_{0, 0};
    std::vector<std::size_t> basis_;
    std::vector<bool> is_basic_;
    std::vector<bool> at_upper_;
    std::vector<double> beta_;
    bool trivially_infeasible_ = false;
};

}  // namespace

Solution solve_lp_bounds(const MPModel &model, const std::vector<double> &lb, const std::vector<double> &ub,
                         const SolverOptions &options, long pivot_budget) {
    for (std::size_t j = 0; j < lb.size(); ++j)
        if (lb[j] > ub[j] + options.feasibility_tol) {
            Solution s;
            s.status = Status::Infeasible;
            return s;
        }
    std::vector<double> l = lb, u = ub;
    for (std::size_t j = 0; j < l.size(); ++j)
        if (u[j] < l[j])
            u[j] = l[j];
    return Simplex(model, l, u, options, pivot_budget).run();
}

}  // namespace detail

Solution solve_lp(const MPModel &model, const SolverOptions &options) {
    std::vector<double> lb, ub;
    for (const auto &v : model.variables()) {
        lb.push_back(v.lb);
        ub.push_back(v.ub);
    }
    return detail::solve_lp_bounds(model, lb, ub, options, options.max_pivots);
}

}  // namespace lprpg::mp
