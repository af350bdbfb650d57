#include "fixtures.h"

#include <stdexcept>

using namespace lprpg;

std::string fixture_path(const std::string &rel) { return std::string(LPRPG_DOMAINS) + "/" + rel; }

std::unique_ptr<Loaded> load_text(const std::string &domain, const std::string &problem) {
    const auto d = pddl::parse_domain(domain);
    const auto p = pddl::parse_problem(problem, d);
    auto out = std::make_unique<Loaded>();
    out->task = analyse(ground(d, p));
    out->landmarks = extract_landmarks(out->task.task, out->task.task.initial);
    out->achieved = initial_achieved(out->landmarks, out->task.task.initial);
    return out;
}

std::unique_ptr<Loaded> load_fixture(const std::string &name, const std::string &problem) {
    return load_text(read_file(fixture_path(name + "/domain.pddl")), read_file(fixture_path(name + "/" + problem)));
}

ActionId Loaded::action(const std::string &name) const {
    for (const auto &a : task.task.actions)
        if (a.name == name)
            return a.id;
    throw std::out_of_range("no action " + name);
}

VarId Loaded::variable(const std::string &name) const {
    for (std::size_t v = 0; v < task.task.variables.size(); ++v)
        if (task.task.variables[v] == name)
            return static_cast<VarId>(v);
    throw std::out_of_range("no variable " + name);
}

FactId Loaded::fact(const std::string &name) const {
    for (std::size_t f = 0; f < task.task.facts.size(); ++f)
        if (task.task.facts[f].name == name)
            return static_cast<FactId>(f);
    throw std::out_of_range("no fact " + name);
}
