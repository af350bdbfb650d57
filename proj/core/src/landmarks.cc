#include "lprpg/analysis.h"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace lprpg {

std::vector<std::string> LandmarkSet::report(const GroundTask &task) const {
    std::vector<std::string> out;
    for (const auto &l : landmarks) {
        std::string s = l.disjunctive() ? "disjunctive" : "fact";
        for (FactId f : l.facts)
            s += " " + task.facts[static_cast<std::size_t>(f)].name;
        out.push_back(s);
    }
    return out;
}

std::vector<bool> relaxed_reachable_facts(const GroundTask &task, const State &state,
                                          const std::vector<bool> &disabled) {
    std::vector<bool> reached = state.facts;
    std::vector<int> missing(task.actions.size());
    std::vector<std::vector<ActionId>> wanting(task.num_facts());
    std::deque<FactId> queue;
    std::vector<ActionId> ready;
    for (const auto &a : task.actions) {
        if (!disabled.empty() && disabled[static_cast<std::size_t>(a.id)])
            continue;
        int m = 0;
        for (FactId f : a.pre_facts)
            if (!reached[static_cast<std::size_t>(f)]) {
                ++m;
                wanting[static_cast<std::size_t>(f)].push_back(a.id);
            }
        missing[static_cast<std::size_t>(a.id)] = m;
        if (m == 0)
            ready.push_back(a.id);
    }
    auto fire = [&](ActionId id) {
        for (FactId f : task.action(id).add_effects)
            if (!reached[static_cast<std::size_t>(f)]) {
                reached[static_cast<std::size_t>(f)] = true;
                queue.push_back(f);
            }
    };
    for (ActionId id : ready)
        fire(id);
    while (!queue.empty()) {
        FactId f = queue.front();
        queue.pop_front();
        for (ActionId id : wanting[static_cast<std::size_t>(f)])
            if (--missing[static_cast<std::size_t>(id)] == 0)
                fire(id);
    }
    return reached;
}

namespace {

bool goals_reachable(const GroundTask &task, const State &state, const std::vector<bool> &disabled) {
    auto r = relaxed_reachable_facts(task, state, disabled);
    return std::all_of(task.goal_facts.begin(), task.goal_facts.end(),
                       [&](FactId g) { return r[static_cast<std::size_t>(g)]; });
}

}  // namespace

LandmarkSet extract_landmarks(const GroundTask &task, const State &state, const LandmarkOptions &options) {
    LandmarkSet out;
    const std::vector<bool> reachable = relaxed_reachable_facts(task, state);
    if (!goals_reachable(task, state, {}))
        return out;  // nothing meaningful to say about an unreachable goal
    // Actions whose preconditions are relaxed-reachable.
    std::vector<bool> usable(task.actions.size());
    for (const auto &a : task.actions)
        usable[static_cast<std::size_t>(a.id)] =
            std::all_of(a.pre_facts.begin(), a.pre_facts.end(),
                        [&](FactId f) { return reachable[static_cast<std::size_t>(f)]; });
    auto achievers = [&](FactId f) {
        std::vector<ActionId> r;
        for (const auto &a : task.actions)
            if (usable[static_cast<std::size_t>(a.id)] && a.adds(f))
                r.push_back(a.id);
        return r;
    };
    auto verified = [&](const std::vector<FactId> &facts) {
        std::vector<bool> disabled(task.actions.size(), false);
        for (FactId f : facts)
            for (ActionId a : achievers(f))
                disabled[static_cast<std::size_t>(a)] = true;
        return !goals_reachable(task, state, disabled);
    };
    const std::size_t cap = options.count_factor * std::max<std::size_t>(1, task.goal_facts.size());
    std::set<FactId> seen;
    std::set<std::vector<FactId>> seen_disj;
    std::deque<FactId> queue;
    for (FactId g : task.goal_facts)
        if (!state.has(g) && seen.insert(g).second) {
            out.landmarks.push_back({{g}, true});
            queue.push_back(g);
        }
    while (!queue.empty() && out.landmarks.size() < cap) {
        FactId l = queue.front();
        queue.pop_front();
        auto ach = achievers(l);
        if (ach.empty())
            continue;
        std::vector<FactId> common = task.action(ach[0]).pre_facts;
        for (std::size_t i = 1; i < ach.size(); ++i) {
            const auto &p = task.action(ach[i]).pre_facts;
            std::vector<FactId> next;
            std::set_intersection(common.begin(), common.end(), p.begin(), p.end(), std::back_inserter(next));
            common = std::move(next);
        }
        bool any = false;
        for (FactId f : common) {
            if (state.has(f) || seen.count(f))
                continue;
            any = true;
            if (out.landmarks.size() >= cap)
                break;
            if (!verified({f}))
                continue;
            seen.insert(f);
            out.landmarks.push_back({{f}});
            queue.push_back(f);
        }
        if (any)
            continue;
        // Disjunctions over a shared predicate.
        std::set<std::string> predicates;
        for (FactId f : task.action(ach[0]).pre_facts)
            predicates.insert(task.facts[static_cast<std::size_t>(f)].predicate);
        for (const auto &pred : predicates) {
            std::set<FactId> uni;
            bool ok = true;
            for (ActionId a : ach) {
                bool found = false;
                for (FactId f : task.action(a).pre_facts) {
                    if (task.facts[static_cast<std::size_t>(f)].predicate != pred)
                        continue;
                    if (state.has(f)) {
                        ok = false;
                        break;
                    }
                    uni.insert(f);
                    found = true;
                }
                if (!found)
                    ok = false;
                if (!ok)
                    break;
            }
            if (!ok || uni.size() < 2 || uni.size() > options.max_disjunction)
                continue;
            std::vector<FactId> d(uni.begin(), uni.end());
            if (out.landmarks.size() >= cap || seen_disj.count(d) || !verified(d))
                continue;
            seen_disj.insert(d);
            out.landmarks.push_back({d});
        }
    }
    return out;
}

std::vector<bool> initial_achieved(const LandmarkSet &lms, const State &root) {
    std::vector<bool> a(lms.size(), false);
    update_achieved(lms, root, a);
    return a;
}

void update_achieved(const LandmarkSet &lms, const State &s, std::vector<bool> &achieved) {
    for (std::size_t i = 0; i < lms.size(); ++i)
        if (lms.landmarks[i].goal)
            achieved[i] = s.has(lms.landmarks[i].facts[0]);
        else if (!achieved[i])
            for (FactId f : lms.landmarks[i].facts)
                if (s.has(f)) {
                    achieved[i] = true;
                    break;
                }
}

}  // namespace lprpg
