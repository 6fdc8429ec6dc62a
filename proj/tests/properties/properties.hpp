#pragma once

// Randomized invariant checks over many small configurations, shared by
// the unit test and the acceptance binary.

#include <cstdint>
#include <string>
#include <vector>

#include "rtasim/model.hpp"

namespace rtasim::props {

struct Report {
    int configs = 0;
    std::uint64_t slots = 0;
    std::vector<std::string> failures;  // "<property>: <config>"

    [[nodiscard]] bool ok() const { return failures.empty(); }
};

/// A random configuration: N <= 50, 1 <= f <= F_max <= 18, short horizon.
SimConfig random_config(std::uint64_t seed, int index);

/// Checks every invariant on `count` random configurations.
Report run_property_suite(int count, std::uint64_t seed);

}  // namespace rtasim::props
