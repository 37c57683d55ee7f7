#include "pap/branching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pap/errors.hpp"
#include "pap/franck_condon.hpp"

namespace pap {

const BranchEntry& BranchingTable::dominant() const {
    if (entries.empty()) throw DomainError("empty branching table");
    return *std::max_element(entries.begin(), entries.end(),
                             [](const BranchEntry& a, const BranchEntry& b) { return a.fraction < b.fraction; });
}

BranchingTable decay_branching(std::span<const double> fc_row, std::span<const int> v) {
    if (fc_row.size() != v.size()) throw DimensionError("FC row and level labels differ in length");
    if (fc_row.empty()) throw DomainError("no lower levels to decay into");
    BranchingTable t;
    for (double f : fc_row) t.fc_squared_sum += f * f;
    if (!(t.fc_squared_sum > 0.0)) throw DomainError("decaying level has no overlap with the lower manifold");
    for (std::size_t i = 0; i < fc_row.size(); ++i)
        t.entries.push_back({v[i], fc_row[i], fc_row[i] * fc_row[i] / t.fc_squared_sum});
    if (t.fc_squared_sum < 0.9) {
        t.incomplete = true;
        char buf[96];
        std::snprintf(buf, sizeof buf, "lower manifold captures only %.3f of the decay; fractions renormalised",
                      t.fc_squared_sum);
        t.warnings.emplace_back(buf);
    }
    return t;
}

BranchingTable decay_accumulation(const BoundState& from, const BoundState& via, const std::vector<BoundState>& lower) {
    std::vector<double> fc;
    std::vector<int> v;
    for (const auto& s : lower) {
        fc.push_back(bound_bound_fc(via, s).value);
        v.push_back(s.v);
    }
    auto t = decay_branching(fc, v);
    // The pi-pulse step is taken as complete; only note a vanishing overlap.
    if (std::abs(bound_bound_fc(from, via).value) < 1e-6)
        t.warnings.emplace_back("pi-pulse overlap from the start level is below 1e-6");
    return t;
}

}  // namespace pap
