#pragma once

#include <span>
#include <string>
#include <vector>

#include "pap/spectrum.hpp"

namespace pap {

struct BranchEntry {
    int v = 0;
    double fc = 0.0;
    double fraction = 0.0;
};

// Spontaneous decay of a unit population parked in an excited level,
// shared over the lower levels by FC^2 (no frequency weighting).
struct BranchingTable {
    std::vector<BranchEntry> entries;
    double fc_squared_sum = 0.0;  // before renormalising
    bool incomplete = false;      // sum below 0.9
    std::vector<std::string> warnings;

    const BranchEntry& dominant() const;
};

BranchingTable decay_branching(std::span<const double> fc_row, std::span<const int> v);

// `from` is moved to `via` by a pi pulse, then `via` decays onto `lower`.
BranchingTable decay_accumulation(const BoundState& from, const BoundState& via, const std::vector<BoundState>& lower);

}  // namespace pap
