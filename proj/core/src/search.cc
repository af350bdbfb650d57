#include "lprpg/search.h"

#include <chrono>
#include <cmath>
#include <deque>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace lprpg {

const char *to_string(SearchStatus s) {
    switch (s) {
    case SearchStatus::Solved: return "solved";
    case SearchStatus::Exhausted: return "exhausted";
    case SearchStatus::RootDeadEnd: return "root-dead-end";
    }
    return "?";
}

std::vector<ActionId> applicable_actions(const GroundTask &task, const State &s) {
    std::vector<ActionId> out;
    for (const auto &a : task.actions)
        if (is_applicable(s, a))
            out.push_back(a.id);
    return out;
}

namespace {

struct Key {
    State state;
    std::vector<bool> achieved;
    bool operator==(const Key &o) const = default;
};

struct KeyHash {
    std::size_t operator()(const Key &k) const {
        std::size_t h = StateHash{}(k.state);
        return h ^ (std::hash<std::vector<bool>>{}(k.achieved) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};

struct Node {
    State state;
    std::vector<bool> achieved;
    int parent = -1;
    ActionId action = -1;
    long g = 0;
    double h = 0;
    std::vector<ActionId> helpful;
};

class Searcher {
public:
    Searcher(const GroundTask &task, const LandmarkSet &lms, const Evaluator &eval, const SearchOptions &opt)
        : task_(task), lms_(lms), eval_(eval), opt_(opt), start_(std::chrono::steady_clock::now()) {}

    SearchResult result;

    bool out_of_budget() {
        if (result.expanded >= opt_.max_expansions)
            result.budget_hit = true;
        else if (std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() > opt_.time_limit_s)
            result.budget_hit = true;
        return result.budget_hit;
    }

    int make_root() {
        Node n;
        n.state = task_.initial;
        n.achieved = initial_achieved(lms_, n.state);
        return add(std::move(n));
    }

    int child(int parent, ActionId a) {
        Node n;
        const Node &p = nodes_[static_cast<std::size_t>(parent)];
        n.state = apply_unchecked(p.state, task_.action(a));
        n.achieved = p.achieved;
        update_achieved(lms_, n.state, n.achieved);
        n.parent = parent;
        n.action = a;
        n.g = p.g + 1;
        return add(std::move(n));
    }

    void evaluate(int i) {
        Node &n = nodes_[static_cast<std::size_t>(i)];
        ++result.evaluated;
        HeuristicResult r = eval_(n.state, n.achieved);
        n.h = r.h;
        n.helpful = std::move(r.helpful);
    }

    Node &node(int i) { return nodes_[static_cast<std::size_t>(i)]; }

    std::vector<ActionId> path(int i) const {
        std::vector<ActionId> out;
        for (; nodes_[static_cast<std::size_t>(i)].parent >= 0; i = nodes_[static_cast<std::size_t>(i)].parent)
            out.push_back(nodes_[static_cast<std::size_t>(i)].action);
        return {out.rbegin(), out.rend()};
    }

    void solved(int i, const char *by) {
        result.status = SearchStatus::Solved;
        result.plan = path(i);
        result.solved_by = by;
    }

    bool run_ehc() {
        int cur = make_root();
        evaluate(cur);
        if (std::isinf(node(cur).h)) {
            result.status = SearchStatus::RootDeadEnd;
            return false;
        }
        result.ehc_incumbents.push_back(node(cur).h);
        while (true) {
            if (is_goal(node(cur).state, task_)) {
                solved(cur, cur == 0 ? "root" : "ehc");
                return true;
            }
            int next = plateau(cur, true);
            if (next < 0 && opt_.ehc_fallback && !result.budget_hit)
                next = plateau(cur, false);
            if (next < 0)
                return false;
            cur = next;
            result.ehc_incumbents.push_back(node(cur).h);
        }
    }

    bool run_wastar() {
        nodes_.clear();
        const int root = make_root();
        evaluate(root);
        if (std::isinf(node(root).h)) {
            result.status = SearchStatus::RootDeadEnd;
            return false;
        }
        struct Entry {
            double f, h;
            long order;
            int node;
            bool operator>(const Entry &o) const {
                if (f != o.f)
                    return f > o.f;
                if (h != o.h)
                    return h > o.h;
                return order > o.order;
            }
        };
        std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;
        std::unordered_map<Key, long, KeyHash> best_g;
        std::unordered_map<Key, double, KeyHash> h_cache;
        long order = 0;
        const double w = opt_.wastar_weight;
        open.push({w * node(root).h, node(root).h, order++, root});
        best_g[{node(root).state, node(root).achieved}] = 0;
        h_cache[{node(root).state, node(root).achieved}] = node(root).h;
        while (!open.empty()) {
            const Entry e = open.top();
            open.pop();
            const Node &n = node(e.node);
            Key k{n.state, n.achieved};
            if (best_g[k] < n.g)
                continue;
            if (is_goal(n.state, task_)) {
                solved(e.node, e.node == root ? "root" : "wastar");
                return true;
            }
            if (out_of_budget())
                return false;
            ++result.expanded;
            for (ActionId a : applicable_actions(task_, n.state)) {
                const int c = child(e.node, a);
                Key ck{node(c).state, node(c).achieved};
                auto it = best_g.find(ck);
                if (it != best_g.end() && it->second <= node(c).g) {
                    nodes_.pop_back();
                    continue;
                }
                best_g[ck] = node(c).g;
                auto hc = h_cache.find(ck);
                if (hc == h_cache.end()) {
                    evaluate(c);
                    hc = h_cache.emplace(ck, node(c).h).first;
                }
                node(c).h = hc->second;
                if (std::isinf(node(c).h))
                    continue;
                open.push({static_cast<double>(node(c).g) + w * node(c).h, node(c).h, order++, c});
            }
        }
        return false;
    }

private:
    int add(Node n) {
        nodes_.push_back(std::move(n));
        return static_cast<int>(nodes_.size()) - 1;
    }

    // Breadth-first search from an incumbent for a strictly better state.
    int plateau(int from, bool helpful_only) {
        const double best = node(from).h;
        std::unordered_set<Key, KeyHash> closed;
        closed.insert({node(from).state, node(from).achieved});
        std::deque<int> frontier{from};
        const long base_g = node(from).g;
        while (!frontier.empty()) {
            const int i = frontier.front();
            frontier.pop_front();
            if (node(i).g - base_g >= opt_.ehc_depth_cap)
                continue;
            if (out_of_budget())
                return -1;
            ++result.expanded;
            const std::vector<ActionId> succ =
                helpful_only ? node(i).helpful : applicable_actions(task_, node(i).state);
            for (ActionId a : succ) {
                const int c = child(i, a);
                if (!closed.insert({node(c).state, node(c).achieved}).second) {
                    nodes_.pop_back();
                    continue;
                }
                evaluate(c);
                if (std::isinf(node(c).h))
                    continue;
                if (node(c).h < best)
                    return c;
                frontier.push_back(c);
            }
        }
        return -1;
    }

    const GroundTask &task_;
    const LandmarkSet &lms_;
    const Evaluator &eval_;
    const SearchOptions &opt_;
    std::chrono::steady_clock::time_point start_;
    std::deque<Node> nodes_;
};

}  // namespace

SearchResult ehc(const GroundTask &task, const LandmarkSet &landmarks, const Evaluator &eval,
                 const SearchOptions &options) {
    Searcher s(task, landmarks, eval, options);
    s.run_ehc();
    return s.result;
}

SearchResult wastar(const GroundTask &task, const LandmarkSet &landmarks, const Evaluator &eval,
                    const SearchOptions &options) {
    Searcher s(task, landmarks, eval, options);
    s.run_wastar();
    return s.result;
}

SearchResult plan_search(const GroundTask &task, const LandmarkSet &landmarks, const Evaluator &eval,
                         const SearchOptions &options) {
    Searcher s(task, landmarks, eval, options);
    if (options.use_ehc) {
        if (s.run_ehc() || s.result.status == SearchStatus::RootDeadEnd || s.result.budget_hit)
            return s.result;
    }
    if (options.use_wastar)
        s.run_wastar();
    return s.result;
}

}  // namespace lprpg
