#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>

#include "gtcent/sampling.hpp"

namespace gtcent::detail {

// Permutation estimators accumulate per block of this many permutations and
// add block sums in block order; the grouping is part of the determinism
// contract shared by the parallel kernels and the serial reference.
constexpr std::uint64_t kPermBlock = 1024;

/// 2^e, saturating at 2^63.
inline std::uint64_t pow2_saturated(int e) {
    return e >= 63 ? (std::uint64_t{1} << 63) : (std::uint64_t{1} << e);
}

struct StopWatch {
    std::chrono::steady_clock::time_point wall_start;
    std::clock_t cpu_start;

    StopWatch() : wall_start(std::chrono::steady_clock::now()), cpu_start(std::clock()) {}

    void record(AllocationEstimate& est) const {
        est.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
        est.cpu_seconds = static_cast<double>(std::clock() - cpu_start) / CLOCKS_PER_SEC;
    }
};

} // namespace gtcent::detail
