#pragma once

// Random tiny numeric planning tasks as PDDL text. Every variable is kept
// in a finite range (consumers need the stock, producers need headroom), so
// the reachable state space is small enough to enumerate.

#include <string>

namespace oracle {

struct MicroTask {
    std::string domain;
    std::string problem;
};

MicroTask micro_task(unsigned seed);

}  // namespace oracle
