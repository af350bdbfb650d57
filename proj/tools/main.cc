#include "CLI11.hpp"
#include "lprpg/generators.h"
#include "lprpg/log.h"
#include "lprpg/pddl.h"
#include "lprpg/run.h"

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace lprpg;

namespace {

struct RunArgs {
    std::string domain, problem, plan_out, stats_out;
    std::string heuristic, weight, ints, prop_goals, landmarks, all_props, num_goal;
    std::string wastar_weight, max_expansions, time_limit;
    bool no_ehc = false;
    DumpOptions dump;
};

// Budget and heuristic flags shared by run and bench.
void add_budget_flags(CLI::App *c, RunArgs &a) {
    c->add_option("--max-expansions", a.max_expansions, "node expansion budget (default 1000000)");
    c->add_option("--time-limit", a.time_limit, "wall-clock budget in seconds (default 1800)");
}

std::vector<std::string> flag_list(const RunArgs &a) {
    std::vector<std::string> out;
    auto put = [&](const char *flag, const std::string &v) {
        if (!v.empty()) {
            out.push_back(flag);
            out.push_back(v);
        }
    };
    put("--heuristic", a.heuristic);
    put("--weight", a.weight);
    put("--ints", a.ints);
    put("--lp-prop-goals", a.prop_goals);
    put("--lp-landmarks", a.landmarks);
    put("--lp-all-props", a.all_props);
    put("--lp-num-goal-conjunct", a.num_goal);
    put("--wastar-weight", a.wastar_weight);
    put("--max-expansions", a.max_expansions);
    put("--time-limit", a.time_limit);
    if (a.no_ehc)
        out.push_back("--no-ehc");
    return out;
}

void append_stats(const std::string &path, const std::vector<RunStats> &rows) {
    const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream f(path, std::ios::app);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    if (fresh)
        f << csv_header() << '\n';
    for (const auto &r : rows)
        f << csv_row(r) << '\n';
}

int do_run(const RunArgs &a) {
    RunOptions o;
    try {
        apply_flags(flag_list(a), o.heuristic, o.search);
        o.heuristic.validate();
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    o.problem_id = std::filesystem::path(a.problem).stem().string();
    o.dump = a.dump;
    if (a.dump.analysis || a.dump.graph || a.dump.lp || a.dump.trace)
        o.dump_out = &std::cerr;
    const RunOutcome r = run_files(a.domain, a.problem, o);
    if (r.exit_code == kExitInputError) {
        std::cerr << "error: " << r.error << '\n';
    } else if (r.exit_code == kExitSolved) {
        if (a.plan_out.empty()) {
            std::cout << r.plan_text;
        } else {
            std::ofstream f(a.plan_out);
            f << r.plan_text;
        }
    } else {
        std::cerr << "no plan: " << r.stats.status << '\n';
    }
    std::cerr << "expanded " << r.stats.nodes_expanded << ", evaluated " << r.stats.states_evaluated
              << ", lp solves " << r.stats.lp_solves << ", " << r.stats.wall_ms << " ms\n";
    if (!a.stats_out.empty())
        append_stats(a.stats_out, {r.stats});
    return r.exit_code;
}

int write_text(const std::string &path, const std::string &text) {
    std::ofstream f(path);
    if (!f) {
        std::cerr << "error: cannot write " << path << '\n';
        return kExitInputError;
    }
    f << text;
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Forward state-space numeric planner"};
    app.require_subcommand(1);
    bool verbose = false, quiet = false;
    app.add_flag("-v,--verbose", verbose, "debug logging");
    app.add_flag("-q,--quiet", quiet, "errors only");

    RunArgs ra;
    CLI::App *run = app.add_subcommand("run", "solve a problem");
    run->add_option("domain", ra.domain, "domain file")->required();
    run->add_option("problem", ra.problem, "problem file")->required();
    run->add_option("-o,--plan", ra.plan_out, "plan file (default stdout)");
    run->add_option("--stats", ra.stats_out, "append a stats row to this CSV file");
    run->add_option("--heuristic", ra.heuristic, "lprpg, metricff, metricff-sapa or lprpg-ff");
    run->add_option("--weight", ra.weight, "k:<float>, hadd or hmax");
    run->add_option("--ints", ra.ints, "minimal, first-layer, prop-goal, num-goal or all");
    run->add_option("--lp-prop-goals", ra.prop_goals, "true/false");
    run->add_option("--lp-landmarks", ra.landmarks, "true/false");
    run->add_option("--lp-all-props", ra.all_props, "true/false");
    run->add_option("--lp-num-goal-conjunct", ra.num_goal, "true/false");
    run->add_option("--wastar-weight", ra.wastar_weight, "W in g + W*h");
    run->add_flag("--no-ehc", ra.no_ehc, "skip enforced hill-climbing");
    add_budget_flags(run, ra);
    run->add_flag("--dump-analysis", ra.dump.analysis, "print variable classes and landmarks");
    run->add_flag("--dump-graph", ra.dump.graph, "print the root planning graph");
    run->add_flag("--dump-lp", ra.dump.lp, "print the root flow model in LP format");
    run->add_flag("--dump-trace", ra.dump.trace, "print the root relaxed plan");

    std::string gen_name, gen_dir, gen_domain_out;
    GeneratorOptions gen;
    int threshold = 0;
    CLI::App *generate_cmd = app.add_subcommand("generate", "write a generated problem");
    generate_cmd->add_option("name", gen_name, "market-trader, mini-settlers or pump-catalyst")->required();
    generate_cmd->add_option("--size", gen.size, "markets (2-8), locations (2-6) or pumps (1-6)");
    generate_cmd->add_option("--seed", gen.seed, "random seed");
    generate_cmd->add_option("--threshold", threshold, "pump-catalyst wheel threshold (default: size)");
    generate_cmd->add_option("--out-dir", gen_dir, "write domain.pddl and problem.pddl here");
    generate_cmd->add_option("--domain-out", gen_domain_out, "write the domain here; the problem goes to stdout");

    std::string manifest, matrix, bench_csv;
    int jobs = 1;
    RunArgs ba;
    CLI::App *bench_cmd = app.add_subcommand("bench", "run a problem suite under several configs");
    bench_cmd->add_option("manifest", manifest, "lines of 'id domain problem'")->required();
    bench_cmd->add_option("matrix", matrix, "lines of 'name [run flags]'")->required();
    bench_cmd->add_option("--csv", bench_csv, "CSV output (default stdout)");
    bench_cmd->add_option("-j,--jobs", jobs, "parallel runs");
    add_budget_flags(bench_cmd, ba);

    std::string v_domain, v_problem, v_plan;
    CLI::App *validate_cmd = app.add_subcommand("validate", "check a plan");
    validate_cmd->add_option("domain", v_domain)->required();
    validate_cmd->add_option("problem", v_problem)->required();
    validate_cmd->add_option("plan", v_plan)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }
    log::set_level(verbose ? log::Level::Debug : quiet ? log::Level::Error : log::Level::Warn);

    if (*run)
        return do_run(ra);

    if (*generate_cmd) {
        if (threshold > 0)
            gen.threshold = threshold;
        GeneratedInstance inst;
        try {
            inst = generate(gen_name, gen);
        } catch (const std::invalid_argument &e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitUsage;
        }
        if (!gen_dir.empty()) {
            std::filesystem::create_directories(gen_dir);
            const std::filesystem::path d(gen_dir);
            if (int rc = write_text((d / "domain.pddl").string(), inst.domain))
                return rc;
            return write_text((d / "problem.pddl").string(), inst.problem);
        }
        if (!gen_domain_out.empty())
            if (int rc = write_text(gen_domain_out, inst.domain))
                return rc;
        std::cout << inst.problem;
        return 0;
    }

    if (*bench_cmd) {
        std::vector<BenchProblem> problems;
        std::vector<NamedConfig> configs;
        try {
            SearchOptions defaults;
            HeuristicConfig unused;
            apply_flags(flag_list(ba), unused, defaults);
            const auto base = std::filesystem::path(manifest).parent_path().string();
            problems = parse_manifest(read_file(manifest), base);
            configs = parse_matrix(read_file(matrix), defaults);
        } catch (const std::invalid_argument &e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitUsage;
        } catch (const PddlError &e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitInputError;
        }
        const auto rows = bench(problems, configs, jobs);
        if (bench_csv.empty()) {
            std::cout << csv_header() << '\n';
            for (const auto &r : rows)
                std::cout << csv_row(r) << '\n';
        } else {
            std::filesystem::remove(bench_csv);
            append_stats(bench_csv, rows);
        }
        std::cerr << coverage_table(coverage(rows, configs));
        return 0;
    }

    try {
        const GroundTask task = load_task(v_domain, v_problem);
        const auto plan = parse_plan(task, read_file(v_plan));
        const ValidationReport rep = validate_plan(task, plan);
        std::cout << (rep.ok ? "valid" : "invalid: " + rep.message) << '\n';
        return rep.ok ? 0 : 1;
    } catch (const PddlError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}
