#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hbench::test {

struct PropertyResult {
    std::string module;
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Randomized invariant suites for every module, `trials` trials each with
/// a fixed seed. Used by both the unit tests and the acceptance runner.
std::vector<PropertyResult> run_all_properties(int trials,
                                               std::uint64_t seed);

} // namespace hbench::test
