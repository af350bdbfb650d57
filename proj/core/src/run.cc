#include "lprpg/run.h"

#include "lprpg/heuristic.h"
#include "lprpg/log.h"
#include "lprpg/pddl.h"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace lprpg {

std::string csv_header() {
    return "schema_version,problem,config,solved,plan_length,nodes_expanded,states_evaluated,lp_solves,lp_build_ms,"
           "lp_solve_ms,wall_ms,status";
}

namespace {

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace

std::string csv_row(const RunStats &s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << kCsvSchemaVersion << ',' << csv_field(s.problem) << ',' << csv_field(s.config) << ',' << (s.solved ? 1 : 0)
       << ',' << s.plan_length << ',' << s.nodes_expanded << ',' << s.states_evaluated << ',' << s.lp_solves << ','
       << s.lp_build_ms << ',' << s.lp_solve_ms << ',' << s.wall_ms << ',' << s.status;
    return os.str();
}

namespace {

void dump_root(const AnalysedTask &at, const LandmarkSet &lms, const RunOptions &o) {
    std::ostream &out = *o.dump_out;
    if (o.dump.analysis) {
        out << ";; classification\n";
        for (const auto &line : at.pc.report(at.task))
            out << line << '\n';
        out << ";; landmarks\n";
        for (const auto &line : lms.report(at.task))
            out << line << '\n';
    }
    if (!o.dump.graph && !o.dump.lp && !o.dump.trace)
        return;
    // A separate instance so dumps do not show up in the run's stats.
    Heuristic h(at, lms, o.heuristic);
    const State &root = at.task.initial;
    const auto achieved = initial_achieved(lms, root);
    if (o.dump.graph || o.dump.lp) {
        RPGraph g = h.expand_graph(root, achieved);
        if (o.dump.graph)
            out << ";; graph\n" << g.dump(at.task);
        if (o.dump.lp) {
            if (g.flow)
                out << ";; flow model\n" << g.flow->dump_lp();
            else
                out << ";; no flow model under " << to_string(h.config().kind) << '\n';
        }
    }
    if (o.dump.trace) {
        HeuristicResult r = h.evaluate(root, achieved);
        out << ";; relaxed plan, h = " << r.h << '\n' << trace_to_string(r, at.task);
    }
}

double ms_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t).count();
}

}  // namespace

RunOutcome run_planner(const std::string &domain_text, const std::string &problem_text, const RunOptions &options) {
    const auto start = std::chrono::steady_clock::now();
    RunOutcome out;
    out.stats.problem = options.problem_id;
    out.stats.config = options.config_name.empty() ? options.heuristic.fingerprint() : options.config_name;
    try {
        const pddl::DomainAST dom = pddl::parse_domain(domain_text);
        const pddl::ProblemAST prob = pddl::parse_problem(problem_text, dom);
        const AnalysedTask at = analyse(ground(dom, prob));
        const LandmarkSet lms = extract_landmarks(at.task, at.task.initial);
        if (options.dump_out)
            dump_root(at, lms, options);

        Heuristic h(at, lms, options.heuristic);
        out.fallback_reason = h.fallback_reason();
        Evaluator eval = [&h](const State &s, const std::vector<bool> &ach) { return h.evaluate(s, ach); };
        out.search = plan_search(at.task, lms, eval, options.search);
        const SearchResult &r = out.search;

        out.stats.nodes_expanded = r.expanded;
        out.stats.states_evaluated = r.evaluated;
        out.stats.lp_solves = h.stats().lp.solves;
        out.stats.lp_build_ms = h.stats().lp.build_ms;
        out.stats.lp_solve_ms = h.stats().lp.solve_ms;
        switch (r.status) {
        case SearchStatus::Solved:
            out.exit_code = kExitSolved;
            out.stats.status = "solved";
            out.stats.solved = true;
            out.plan = r.plan;
            out.stats.plan_length = static_cast<long>(r.plan.size());
            out.plan_text = format_plan(at.task, r.plan);
            break;
        case SearchStatus::RootDeadEnd:
            out.exit_code = kExitRootUnsolvable;
            out.stats.status = "root-dead-end";
            break;
        case SearchStatus::Exhausted:
            out.exit_code = kExitExhausted;
            out.stats.status = r.budget_hit ? "budget" : "exhausted";
            break;
        }
    } catch (const PddlError &e) {
        out.exit_code = kExitInputError;
        out.stats.status = "input-error";
        out.error = e.what();
    }
    out.stats.wall_ms = ms_since(start);
    return out;
}

RunOutcome run_files(const std::string &domain_path, const std::string &problem_path, const RunOptions &options) {
    std::string dom, prob;
    try {
        dom = read_file(domain_path);
        prob = read_file(problem_path);
    } catch (const PddlError &e) {
        RunOutcome out;
        out.exit_code = kExitInputError;
        out.stats.problem = options.problem_id;
        out.stats.config = options.config_name.empty() ? options.heuristic.fingerprint() : options.config_name;
        out.stats.status = "input-error";
        out.error = e.what();
        return out;
    }
    return run_planner(dom, prob, options);
}

// ---- bench ---------------------------------------------------------------

namespace {

std::vector<std::string> split_words(const std::string &line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    for (std::string w; is >> w;)
        out.push_back(w);
    return out;
}

std::string strip_comment(const std::string &line) { return line.substr(0, line.find('#')); }

bool parse_bool(const std::string &flag, const std::string &v) {
    if (v == "true" || v == "1" || v == "on" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "off" || v == "no")
        return false;
    throw std::invalid_argument(flag + ": expected a boolean, got '" + v + "'");
}

double parse_number(const std::string &flag, const std::string &v) {
    std::size_t used = 0;
    double d = 0;
    try {
        d = std::stod(v, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != v.size())
        throw std::invalid_argument(flag + ": expected a number, got '" + v + "'");
    return d;
}

}  // namespace

void apply_flags(const std::vector<std::string> &args, HeuristicConfig &h, SearchOptions &s) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string &f = args[i];
        if (f == "--no-ehc") {
            s.use_ehc = false;
            continue;
        }
        if (f == "--no-wastar") {
            s.use_wastar = false;
            continue;
        }
        if (i + 1 >= args.size())
            throw std::invalid_argument(f + ": missing value");
        const std::string &v = args[++i];
        if (f == "--heuristic")
            h.kind = parse_heuristic_kind(v);
        else if (f == "--weight")
            h.set_weight(v);
        else if (f == "--ints")
            h.ints = parse_integrality(v);
        else if (f == "--lp-prop-goals")
            h.lp_prop_goals = parse_bool(f, v);
        else if (f == "--lp-landmarks")
            h.lp_landmarks = parse_bool(f, v);
        else if (f == "--lp-all-props")
            h.lp_all_props = parse_bool(f, v);
        else if (f == "--lp-num-goal-conjunct")
            h.lp_num_goal_conjunct = parse_bool(f, v);
        else if (f == "--wastar-weight")
            s.wastar_weight = parse_number(f, v);
        else if (f == "--max-expansions")
            s.max_expansions = static_cast<long>(parse_number(f, v));
        else if (f == "--time-limit")
            s.time_limit_s = parse_number(f, v);
        else
            throw std::invalid_argument("unknown flag '" + f + "'");
    }
}

std::vector<BenchProblem> parse_manifest(const std::string &text, const std::string &base_dir) {
    std::vector<BenchProblem> out;
    std::istringstream is(text);
    int lineno = 0;
    for (std::string line; std::getline(is, line);) {
        ++lineno;
        const auto w = split_words(strip_comment(line));
        if (w.empty())
            continue;
        if (w.size() != 3)
            throw std::invalid_argument("manifest line " + std::to_string(lineno) + ": expected 'id domain problem'");
        const std::filesystem::path base(base_dir);
        out.push_back({w[0], (base / w[1]).string(), (base / w[2]).string()});
    }
    return out;
}

std::vector<NamedConfig> parse_matrix(const std::string &text, const SearchOptions &defaults) {
    std::vector<NamedConfig> out;
    std::istringstream is(text);
    int lineno = 0;
    for (std::string line; std::getline(is, line);) {
        ++lineno;
        auto w = split_words(strip_comment(line));
        if (w.empty())
            continue;
        NamedConfig c{w[0], {}, defaults};
        try {
            apply_flags({w.begin() + 1, w.end()}, c.heuristic, c.search);
            c.heuristic.validate();
        } catch (const std::invalid_argument &e) {
            throw std::invalid_argument("matrix line " + std::to_string(lineno) + ": " + e.what());
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<RunStats> bench(const std::vector<BenchProblem> &problems, const std::vector<NamedConfig> &configs,
                            int jobs) {
    const std::size_t n = problems.size() * configs.size();
    std::vector<RunStats> rows(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next++) < n;) {
            const BenchProblem &p = problems[k / configs.size()];
            const NamedConfig &c = configs[k % configs.size()];
            RunOptions o;
            o.problem_id = p.id;
            o.config_name = c.name;
            o.heuristic = c.heuristic;
            o.search = c.search;
            try {
                rows[k] = run_files(p.domain_path, p.problem_path, o).stats;
            } catch (const std::exception &e) {
                log::error(p.id + " under " + c.name + ": " + e.what());
                rows[k] = RunStats{};
                rows[k].problem = p.id;
                rows[k].config = c.name;
                rows[k].status = "error";
            }
        }
    };
    const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }
    return rows;
}

std::vector<Coverage> coverage(const std::vector<RunStats> &rows, const std::vector<NamedConfig> &configs) {
    std::vector<Coverage> out;
    for (const auto &c : configs) {
        Coverage cov{c.name};
        for (const auto &r : rows)
            if (r.config == c.name) {
                ++cov.total;
                cov.solved += r.solved ? 1 : 0;
            }
        out.push_back(cov);
    }
    return out;
}

std::string coverage_table(const std::vector<Coverage> &c) {
    std::size_t width = 6;
    for (const auto &x : c)
        width = std::max(width, x.config.size());
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(width)) << "config" << "  solved\n";
    for (const auto &x : c)
        os << std::left << std::setw(static_cast<int>(width)) << x.config << "  " << x.solved << '/' << x.total << '\n';
    return os.str();
}

}  // namespace lprpg
