#pragma once

#include <optional>
#include <string>
#include <vector>

namespace lprpg {

struct GeneratedInstance {
    std::string domain;   // PDDL domain text
    std::string problem;  // PDDL problem text
};

struct GeneratorOptions {
    int size = 2;
    unsigned seed = 1;
    // pump-catalyst only: flow needed by the wheel; defaults to size.
    std::optional<int> threshold;
};

// Names accepted by generate(): market-trader, mini-settlers, pump-catalyst.
std::vector<std::string> generator_names();
// Size ranges: markets 2..8, locations 2..6, pumps 1..6. Throws
// std::invalid_argument for unknown names or sizes out of range.
GeneratedInstance generate(const std::string &name, const GeneratorOptions &options);

}  // namespace lprpg
