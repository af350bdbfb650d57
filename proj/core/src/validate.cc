#include "lprpg/pddl.h"
#include "lprpg/search.h"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace lprpg {

ValidationReport validate_plan(const GroundTask &task, const std::vector<ActionId> &plan) {
    ValidationReport r;
    State s = task.initial;
    for (std::size_t i = 0; i < plan.size(); ++i) {
        const ActionId a = plan[i];
        if (a < 0 || static_cast<std::size_t>(a) >= task.actions.size()) {
            r.ok = false;
            r.failed_step = static_cast<int>(i);
            r.message = "step " + std::to_string(i) + ": unknown action id " + std::to_string(a);
            return r;
        }
        try {
            s = apply(s, task.action(a), task);
        } catch (const PreconditionViolated &e) {
            r.ok = false;
            r.failed_step = static_cast<int>(i);
            r.message = "step " + std::to_string(i) + " " + task.action(a).name + ": " + e.what();
            return r;
        }
    }
    if (!is_goal(s, task)) {
        r.ok = false;
        r.failed_step = static_cast<int>(plan.size());
        std::ostringstream os;
        os << "goal not satisfied after " << plan.size() << " steps:";
        for (FactId f : task.goal_facts)
            if (!s.has(f))
                os << " " << task.facts[static_cast<std::size_t>(f)].name;
        for (const auto &c : task.goal_num)
            if (!c.holds(s.values))
                os << " " << to_string(c, task);
        r.message = os.str();
    }
    return r;
}

std::string format_plan(const GroundTask &task, const std::vector<ActionId> &plan) {
    std::ostringstream os;
    for (std::size_t i = 0; i < plan.size(); ++i)
        os << i << ": " << task.action(plan[i]).name << "\n";
    return os.str();
}

namespace {

std::string normalise(const std::string &s) {
    std::string out;
    bool space = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            space = true;
            continue;
        }
        if (space && !out.empty() && out.back() != '(' && c != ')')
            out.push_back(' ');
        space = false;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

}  // namespace

std::vector<ActionId> parse_plan(const GroundTask &task, const std::string &text) {
    std::unordered_map<std::string, ActionId> by_name;
    for (const auto &a : task.actions)
        by_name.emplace(normalise(a.name), a.id);
    std::vector<ActionId> plan;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto c = line.find(';'); c != std::string::npos)
            line.erase(c);
        const auto open = line.find('(');
        if (open == std::string::npos)
            continue;
        const auto close = line.find(')', open);
        if (close == std::string::npos)
            throw InputError("plan line " + std::to_string(lineno) + ": missing ')'");
        const std::string name = normalise(line.substr(open, close - open + 1));
        auto it = by_name.find(name);
        if (it == by_name.end())
            throw InputError("plan line " + std::to_string(lineno) + ": unknown or inapplicable action " + name);
        plan.push_back(it->second);
    }
    return plan;
}

}  // namespace lprpg
