#pragma once

#include "lprpg/mp.h"

namespace lprpg::mp::detail {

// solve_lp with the column bounds replaced by lb/ub; pivots counted against
// pivot_budget.
Solution solve_lp_bounds(const MPModel &model, const std::vector<double> &lb, const std::vector<double> &ub,
                         const SolverOptions &options, long pivot_budget);

}  // namespace lprpg::mp::detail
