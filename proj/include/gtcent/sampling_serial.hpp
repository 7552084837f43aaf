#pragma once

#include "gtcent/sampling.hpp"

namespace gtcent::serial {

// Single-threaded reference estimators. Same substream scheme and summation
// order as the parallel kernels, so outputs must match them bit for bit;
// kept as plain loops for testing and benchmarking.

AllocationEstimate estimate_banzhaf(const GameSpec& game, const EstimatorConfig& config);
AllocationEstimate estimate_banzhaf_owen(const GameSpec& game, const PartitionStructure& partition,
                                         const EstimatorConfig& config);
AllocationEstimate estimate_shapley(const GameSpec& game, const EstimatorConfig& config);
AllocationEstimate estimate_owen(const GameSpec& game, const PartitionStructure& partition,
                                 const EstimatorConfig& config);

} // namespace gtcent::serial
