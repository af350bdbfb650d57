#pragma once

#include "lprpg/config.h"
#include "lprpg/search.h"

#include <iosfwd>
#include <string>
#include <vector>

namespace lprpg {

enum ExitCode {
    kExitSolved = 0,
    kExitExhausted = 1,
    kExitUsage = 2,
    kExitInputError = 3,
    kExitRootUnsolvable = 4,
};

constexpr int kCsvSchemaVersion = 1;

struct RunStats {
    std::string problem;
    std::string config;  // config name in bench, fingerprint otherwise
    bool solved = false;
    long plan_length = 0;
    long nodes_expanded = 0;
    long states_evaluated = 0;
    long lp_solves = 0;
    double lp_build_ms = 0;
    double lp_solve_ms = 0;
    double wall_ms = 0;
    std::string status;  // solved, exhausted, budget, root-dead-end, input-error, error
};

std::string csv_header();
std::string csv_row(const RunStats &s);

struct DumpOptions {
    bool analysis = false;  // classification and landmark reports
    bool graph = false;     // root RPG layers
    bool lp = false;        // root flow model in LP format
    bool trace = false;     // root relaxed plan
};

struct RunOptions {
    std::string problem_id;
    std::string config_name;  // empty: use the config fingerprint
    HeuristicConfig heuristic;
    SearchOptions search;
    DumpOptions dump;
    std::ostream *dump_out = nullptr;  // required when any dump flag is set
};

struct RunOutcome {
    int exit_code = kExitExhausted;
    RunStats stats;
    std::vector<ActionId> plan;
    std::string plan_text;
    std::string error;
    std::string fallback_reason;
    SearchResult search;
};

// parse, ground, analyse, search. Never throws for bad input; errors come
// back as kExitInputError with the message in error.
RunOutcome run_planner(const std::string &domain_text, const std::string &problem_text, const RunOptions &options);
RunOutcome run_files(const std::string &domain_path, const std::string &problem_path, const RunOptions &options);

// ---- bench ---------------------------------------------------------------

struct BenchProblem {
    std::string id;
    std::string domain_path;
    std::string problem_path;
};

struct NamedConfig {
    std::string name;
    HeuristicConfig heuristic;
    SearchOptions search;
};

// One "id domain.pddl problem.pddl" per line; paths relative to base_dir.
// '#' starts a comment.
std::vector<BenchProblem> parse_manifest(const std::string &text, const std::string &base_dir);
// One "name [flags]" per line using the run flag syntax, e.g.
// "k3 --heuristic lprpg --weight k:3 --lp-landmarks true".
std::vector<NamedConfig> parse_matrix(const std::string &text, const SearchOptions &defaults);
// Applies run flags to a config; throws std::invalid_argument on unknown flags
// or bad values.
void apply_flags(const std::vector<std::string> &args, HeuristicConfig &h, SearchOptions &s);

// Every problem under every config. Failures become unsolved rows.
std::vector<RunStats> bench(const std::vector<BenchProblem> &problems, const std::vector<NamedConfig> &configs,
                            int jobs = 1);

struct Coverage {
    std::string config;
    int solved = 0;
    int total = 0;
};

std::vector<Coverage> coverage(const std::vector<RunStats> &rows, const std::vector<NamedConfig> &configs);
std::string coverage_table(const std::vector<Coverage> &c);

}  // namespace lprpg
