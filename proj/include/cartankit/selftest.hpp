#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace cartankit {

struct CriterionResult {
    int index = 0;
    std::string label;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the nine acceptance criteria in order. Progress and a result table
/// go to `out`. Deterministic for a fixed seed.
std::vector<CriterionResult> run_selftest(std::uint64_t seed, std::ostream& out);

/// True iff every criterion passed.
bool all_passed(const std::vector<CriterionResult>& results);

} // namespace cartankit
