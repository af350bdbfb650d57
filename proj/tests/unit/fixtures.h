#pragma once

#include "lprpg/analysis.h"
#include "lprpg/heuristic.h"
#include "lprpg/pddl.h"

#include <memory>
#include <string>

// Everything a heuristic needs for one problem, kept alive together.
struct Loaded {
    lprpg::AnalysedTask task;
    lprpg::LandmarkSet landmarks;
    std::vector<bool> achieved;

    const lprpg::State &root() const { return task.task.initial; }
    lprpg::ActionId action(const std::string &name) const;
    lprpg::VarId variable(const std::string &name) const;
    lprpg::FactId fact(const std::string &name) const;
};

std::string fixture_path(const std::string &rel);
std::unique_ptr<Loaded> load_text(const std::string &domain, const std::string &problem);
// A bundled fixture by directory name, e.g. "crt".
std::unique_ptr<Loaded> load_fixture(const std::string &name, const std::string &problem = "problem.pddl");
