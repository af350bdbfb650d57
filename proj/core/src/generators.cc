#include "lprpg/generators.h"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace lprpg {

namespace {

const char *kMarketDomain = R"((define (domain market-trader)
  (:requirements :strips :typing :numeric-fluents)
  (:types market goods)
  (:predicates (at ?m - market) (road ?a ?b - market))
  (:functions (money) (camel-food) (carried ?g - goods)
              (buy-price ?g - goods ?m - market) (sell-price ?g - goods ?m - market)
              (food-price ?m - market) (travel-cost ?a ?b - market))
  (:action buy
    :parameters (?g - goods ?m - market)
    :precondition (and (at ?m) (>= (money) (buy-price ?g ?m)))
    :effect (and (decrease (money) (buy-price ?g ?m)) (increase (carried ?g) 1)))
  (:action sell
    :parameters (?g - goods ?m - market)
    :precondition (and (at ?m) (>= (carried ?g) 1))
    :effect (and (increase (money) (sell-price ?g ?m)) (decrease (carried ?g) 1)))
  (:action buy-food
    :parameters (?m - market)
    :precondition (and (at ?m) (>= (money) (food-price ?m)))
    :effect (and (decrease (money) (food-price ?m)) (increase (camel-food) 1)))
  (:action travel
    :parameters (?a ?b - market)
    :precondition (and (at ?a) (road ?a ?b) (>= (camel-food) (travel-cost ?a ?b)))
    :effect (and (not (at ?a)) (at ?b) (decrease (camel-food) (travel-cost ?a ?b)))))
)";

const char *kSettlersDomain = R"((define (domain mini-settlers)
  (:requirements :strips :typing :numeric-fluents)
  (:types place vehicle resource)
  (:constants timber wood stone - resource)
  (:predicates (woodland ?p - place) (mountain ?p - place) (has-sawmill ?p - place)
               (connected ?a ?b - place) (is-at ?v - vehicle ?p - place))
  (:functions (available ?r - resource ?p - place) (carts-load ?r - resource ?v - vehicle)
              (space-in ?v - vehicle))
  (:action fell
    :parameters (?p - place)
    :precondition (woodland ?p)
    :effect (increase (available timber ?p) 1))
  (:action saw
    :parameters (?p - place)
    :precondition (and (has-sawmill ?p) (>= (available timber ?p) 1))
    :effect (and (decrease (available timber ?p) 1) (increase (available wood ?p) 1)))
  (:action quarry
    :parameters (?p - place)
    :precondition (mountain ?p)
    :effect (increase (available stone ?p) 1))
  (:action load
    :parameters (?r - resource ?v - vehicle ?p - place)
    :precondition (and (is-at ?v ?p) (>= (available ?r ?p) 1) (>= (space-in ?v) 1))
    :effect (and (decrease (available ?r ?p) 1) (increase (carts-load ?r ?v) 1) (decrease (space-in ?v) 1)))
  (:action unload
    :parameters (?r - resource ?v - vehicle ?p - place)
    :precondition (and (is-at ?v ?p) (>= (carts-load ?r ?v) 1))
    :effect (and (increase (available ?r ?p) 1) (decrease (carts-load ?r ?v) 1) (increase (space-in ?v) 1)))
  (:action move
    :parameters (?v - vehicle ?a ?b - place)
    :precondition (and (is-at ?v ?a) (connected ?a ?b))
    :effect (and (not (is-at ?v ?a)) (is-at ?v ?b))))
)";

const char *kPumpDomain = R"((define (domain pump-catalyst)
  (:requirements :strips :typing :numeric-fluents)
  (:types pump)
  (:predicates (wheel-turned))
  (:functions (pumping ?p - pump) (water-flow) (wheel-threshold))
  (:action activate
    :parameters (?p - pump)
    :precondition (<= (pumping ?p) 0)
    :effect (and (increase (pumping ?p) 1) (increase (water-flow) 1)))
  (:action deactivate
    :parameters (?p - pump)
    :precondition (and (>= (pumping ?p) 1) (>= (water-flow) 1))
    :effect (and (decrease (pumping ?p) 1) (decrease (water-flow) 1)))
  (:action turn-wheel
    :parameters ()
    :precondition (>= (water-flow) (wheel-threshold))
    :effect (wheel-turned)))
)";

void check_range(const std::string &name, int size, int lo, int hi) {
    if (size < lo || size > hi)
        throw std::invalid_argument(name + " size must be in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                    "], got " + std::to_string(size));
}

int uniform(std::mt19937 &rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

GeneratedInstance market_trader(const GeneratorOptions &o) {
    check_range("market-trader", o.size, 2, 8);
    std::mt19937 rng(o.seed);
    const int markets = o.size;
    const int goods = 4;
    std::vector<int> base(goods);
    for (auto &b : base)
        b = uniform(rng, 6, 14);
    std::vector<std::vector<int>> buy(goods, std::vector<int>(markets)), sell = buy;
    for (int g = 0; g < goods; ++g)
        for (int m = 0; m < markets; ++m) {
            buy[g][m] = base[g] + uniform(rng, -1, 3);
            sell[g][m] = buy[g][m] - uniform(rng, 1, 3);
        }
    // One good with a real margin between two markets.
    const int good = uniform(rng, 0, goods - 1);
    const int cheap = uniform(rng, 0, markets - 1);
    const int dear = (cheap + uniform(rng, 1, markets - 1)) % markets;
    buy[good][cheap] = base[good] - 3;
    sell[good][cheap] = buy[good][cheap] - 1;
    buy[good][dear] = base[good] + 6;
    sell[good][dear] = base[good] + 4;
    const int margin = sell[good][dear] - buy[good][cheap];
    // A luxury good that sells for more than anything else but never below
    // its cheapest purchase price.
    const int luxury = (good + 1) % goods;
    const int lux_base = uniform(rng, 20, 28);
    for (int m = 0; m < markets; ++m) {
        buy[luxury][m] = lux_base + uniform(rng, 0, 4);
        sell[luxury][m] = lux_base - uniform(rng, 2, 6);
    }
    sell[luxury][uniform(rng, 0, markets - 1)] = lux_base - 1;

    // Ring plus random chords, symmetric.
    std::vector<std::vector<int>> cost(markets, std::vector<int>(markets, 0));
    for (int m = 0; m < markets; ++m) {
        const int n = (m + 1) % markets;
        if (n != m)
            cost[m][n] = cost[n][m] = uniform(rng, 1, 2);
    }
    for (int k = 0; k < markets / 2; ++k) {
        const int a = uniform(rng, 0, markets - 1), b = uniform(rng, 0, markets - 1);
        if (a != b && cost[a][b] == 0)
            cost[a][b] = cost[b][a] = uniform(rng, 1, 3);
    }
    // Cheapest food cost between markets, so the start can always afford
    // to reach the cheap market and take one load to the dear one.
    const int unreachable = 1000;
    std::vector<std::vector<int>> dist(markets, std::vector<int>(markets, unreachable));
    for (int a = 0; a < markets; ++a)
        for (int b = 0; b < markets; ++b)
            dist[a][b] = a == b ? 0 : cost[a][b] > 0 ? cost[a][b] : unreachable;
    for (int k = 0; k < markets; ++k)
        for (int a = 0; a < markets; ++a)
            for (int b = 0; b < markets; ++b)
                dist[a][b] = std::min(dist[a][b], dist[a][k] + dist[k][b]);
    const int start = uniform(rng, 0, markets - 1);
    const int food = dist[start][cheap];
    const int money = buy[good][cheap] + dist[cheap][dear] + uniform(rng, 0, 3);
    const int rounds = 8 + 2 * markets + uniform(rng, 0, 2);
    const int target = money + rounds * margin;

    std::ostringstream p;
    p << "(define (problem market-" << markets << "-" << o.seed << ")\n  (:domain market-trader)\n  (:objects";
    for (int m = 0; m < markets; ++m)
        p << " m" << m + 1;
    p << " - market";
    for (int g = 0; g < goods; ++g)
        p << " g" << g + 1;
    p << " - goods)\n  (:init\n    (at m" << start + 1 << ")\n    (= (money) " << money << ")\n    (= (camel-food) " << food << ")\n";
    for (int g = 0; g < goods; ++g)
        p << "    (= (carried g" << g + 1 << ") 0)\n";
    for (int m = 0; m < markets; ++m) {
        p << "    (= (food-price m" << m + 1 << ") 1)\n";
        for (int g = 0; g < goods; ++g)
            p << "    (= (buy-price g" << g + 1 << " m" << m + 1 << ") " << buy[g][m] << ") (= (sell-price g" << g + 1
              << " m" << m + 1 << ") " << sell[g][m] << ")\n";
    }
    for (int a = 0; a < markets; ++a)
        for (int b = 0; b < markets; ++b)
            if (cost[a][b] > 0)
                p << "    (road m" << a + 1 << " m" << b + 1 << ") (= (travel-cost m" << a + 1 << " m" << b + 1
                  << ") " << cost[a][b] << ")\n";
    p << "  )\n  (:goal (>= (money) " << target << "))\n)\n";
    return {kMarketDomain, p.str()};
}

GeneratedInstance mini_settlers(const GeneratorOptions &o) {
    check_range("mini-settlers", o.size, 2, 6);
    std::mt19937 rng(o.seed);
    const int places = o.size;
    const int carts = places >= 4 ? 2 : 1;
    std::ostringstream p;
    p << "(define (problem settlers-" << places << "-" << o.seed << ")\n  (:domain mini-settlers)\n  (:objects";
    for (int i = 0; i < places; ++i)
        p << " l" << i + 1;
    p << " - place";
    for (int c = 0; c < carts; ++c)
        p << " cart" << c + 1;
    p << " - vehicle)\n  (:init\n    (woodland l1) (has-sawmill l1)\n";
    const int mountain = places >= 3 ? uniform(rng, 2, places) : 0;
    if (mountain)
        p << "    (mountain l" << mountain << ")\n";
    for (int i = 1; i < places; ++i) {
        // A path l1 - l2 - ... plus one random extra link.
        p << "    (connected l" << i << " l" << i + 1 << ") (connected l" << i + 1 << " l" << i << ")\n";
    }
    if (places >= 4) {
        const int a = uniform(rng, 1, places), b = uniform(rng, 1, places);
        if (std::abs(a - b) > 1)
            p << "    (connected l" << a << " l" << b << ") (connected l" << b << " l" << a << ")\n";
    }
    for (int c = 0; c < carts; ++c) {
        p << "    (is-at cart" << c + 1 << " l" << uniform(rng, 1, places) << ") (= (space-in cart" << c + 1
          << ") 2)\n";
        for (const char *r : {"timber", "wood", "stone"})
            p << "    (= (carts-load " << r << " cart" << c + 1 << ") 0)\n";
    }
    for (int i = 0; i < places; ++i)
        for (const char *r : {"timber", "wood", "stone"})
            p << "    (= (available " << r << " l" << i + 1 << ") 0)\n";
    p << "  )\n  (:goal (and (>= (available wood l1) 2)";
    if (mountain)
        p << " (>= (available stone l1) 1)";
    p << "))\n)\n";
    return {kSettlersDomain, p.str()};
}

GeneratedInstance pump_catalyst(const GeneratorOptions &o) {
    check_range("pump-catalyst", o.size, 1, 6);
    const int threshold = o.threshold.value_or(o.size);
    if (threshold < 1)
        throw std::invalid_argument("pump-catalyst threshold must be positive");
    std::ostringstream p;
    p << "(define (problem pumps-" << o.size << "-" << threshold << ")\n  (:domain pump-catalyst)\n  (:objects";
    for (int i = 0; i < o.size; ++i)
        p << " p" << i + 1;
    p << " - pump)\n  (:init\n    (= (water-flow) 0) (= (wheel-threshold) " << threshold << ")\n";
    for (int i = 0; i < o.size; ++i)
        p << "    (= (pumping p" << i + 1 << ") 0)\n";
    p << "  )\n  (:goal (wheel-turned))\n)\n";
    return {kPumpDomain, p.str()};
}

}  // namespace

std::vector<std::string> generator_names() { return {"market-trader", "mini-settlers", "pump-catalyst"}; }

GeneratedInstance generate(const std::string &name, const GeneratorOptions &options) {
    if (name == "market-trader")
        return market_trader(options);
    if (name == "mini-settlers")
        return mini_settlers(options);
    if (name == "pump-catalyst")
        return pump_catalyst(options);
    throw std::invalid_argument("unknown generator '" + name + "'");
}

}  // namespace lprpg
