#pragma once

#include <map>
#include <string>
#include <vector>

#include "ncser/linalg.hpp"

namespace ncser {

/// One serialization round maps transmitting edge ids to the micro-function
/// they send; absent edges are silent. Linear micro-functions are matrices
/// (zero or more functionals), general ones are value tables.
struct LinearSchedule {
    std::vector<std::map<std::string, Matrix>> rounds;
};

struct GeneralSchedule {
    std::vector<std::map<std::string, std::vector<int>>> rounds;
};

/// First-violation report from a schedule verifier. item names the defining
/// condition that failed: 2 = a round sends more than f_e, 3 = the rounds
/// together send less than f_e, 4 = a round is not computable from strictly
/// earlier incoming transmissions (sources are available in full before
/// round 1).
struct ScheduleReport {
    bool ok = true;
    int item = 0;
    std::string edge;
    long long round = -1;  // 0-based, -1 when not round-specific
    std::string message;
};

}  // namespace ncser
