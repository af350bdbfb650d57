#include "lprpg/generators.h"
#include "lprpg/heuristic.h"
#include "lprpg/mp.h"
#include "lprpg/pddl.h"

#include <benchmark/benchmark.h>

#include <random>

using namespace lprpg;

namespace {

// Dense random LP: n boxed columns, m <= rows with positive data, maximise.
mp::MPModel random_model(int n, int m, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coef(1, 9);
    mp::MPModel model;
    mp::Terms obj;
    for (int j = 0; j < n; ++j) {
        model.add_variable(0, 100);
        obj.emplace_back(j, coef(rng));
    }
    for (int i = 0; i < m; ++i) {
        mp::Terms row;
        for (int j = 0; j < n; ++j)
            row.emplace_back(j, coef(rng));
        model.add_constraint(row, mp::RowOp::LessEq, 50.0 * n);
    }
    model.set_objective(obj, mp::Sense::Maximize);
    return model;
}

void BM_Simplex(benchmark::State &state) {
    const auto n = static_cast<int>(state.range(0));
    const auto model = random_model(n, n, 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(mp::solve_lp(model));
}
BENCHMARK(BM_Simplex)->Arg(10)->Arg(40)->Arg(100);

void BM_BranchAndBound(benchmark::State &state) {
    auto model = random_model(static_cast<int>(state.range(0)), 6, 11);
    for (std::size_t j = 0; j < model.num_variables(); ++j)
        model.set_variable_kind(static_cast<int>(j), mp::VarKind::Integer);
    for (auto _ : state)
        benchmark::DoNotOptimize(mp::solve(model));
}
BENCHMARK(BM_BranchAndBound)->Arg(6)->Arg(12);

struct Problem {
    AnalysedTask task;
    LandmarkSet landmarks;
    std::vector<bool> achieved;
};

Problem market(int size) {
    GeneratorOptions o;
    o.size = size;
    o.seed = 3;
    const auto g = generate("market-trader", o);
    const auto d = pddl::parse_domain(g.domain);
    Problem p{analyse(ground(d, pddl::parse_problem(g.problem, d))), {}, {}};
    p.landmarks = extract_landmarks(p.task.task, p.task.task.initial);
    p.achieved = initial_achieved(p.landmarks, p.task.task.initial);
    return p;
}

void evaluate_root(benchmark::State &state, HeuristicKind kind) {
    const Problem p = market(static_cast<int>(state.range(0)));
    HeuristicConfig c;
    c.kind = kind;
    Heuristic h(p.task, p.landmarks, c);
    for (auto _ : state)
        benchmark::DoNotOptimize(h.evaluate(p.task.task.initial, p.achieved));
    state.counters["lp_solves"] = benchmark::Counter(static_cast<double>(h.stats().lp.solves),
                                                     benchmark::Counter::kAvgIterations);
}

void BM_EvaluateLprpg(benchmark::State &state) { evaluate_root(state, HeuristicKind::LPRPG); }
void BM_EvaluateMetricFF(benchmark::State &state) { evaluate_root(state, HeuristicKind::MetricFF); }
BENCHMARK(BM_EvaluateLprpg)->Arg(2)->Arg(5)->Arg(8)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EvaluateMetricFF)->Arg(2)->Arg(5)->Arg(8)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
