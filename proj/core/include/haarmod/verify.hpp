#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace haarmod::verify {

struct Check {
    std::string suite;
    std::string name;
    bool passed = false;
    std::string detail;  // failure diagnostics, empty on pass
};

std::vector<std::string> suite_names();  // rings, matrices, sampling, counting, stats, all

/// Runs a named invariant suite. Unknown names throw std::invalid_argument.
std::vector<Check> run_suite(const std::string& suite, std::uint64_t seed = 0);

}  // namespace haarmod::verify
