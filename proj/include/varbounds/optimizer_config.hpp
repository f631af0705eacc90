#pragma once

#include <cstdint>
#include <numbers>

namespace varbounds {

/// Compass-search settings. Every field is exposed as a CLI flag.
struct OptimizerConfig {
    int restarts = 32;  // random restarts, on top of the mandatory seeds
    std::uint64_t seed = 0xDEBA515;
    int max_evals = 20000;  // per restart
    double step_init = std::numbers::pi / 4.0;
    double step_min = 1e-7;
    double tol = 1e-12;
};

}  // namespace varbounds
