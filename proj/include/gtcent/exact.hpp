#pragma once

#include "gtcent/games.hpp"
#include "gtcent/partition.hpp"

namespace gtcent {

// Exact enumeration of the four coalitional values. Instances beyond the
// stated caps raise CapacityError. Per-player loops run in parallel; results
// are bit-identical regardless of thread count.

/// Shapley value via the subset-weighted closed form. Cap: n <= 25.
AllocationVector exact_shapley(const GameSpec& game);

/// Banzhaf value: uniform average of marginal contributions over all
/// coalitions excluding the player. Cap: n <= 25.
AllocationVector exact_banzhaf(const GameSpec& game);

/// Owen value by direct enumeration of the permutations compatible with the
/// partition. Caps: n <= 20 and m! * prod(p_k!) <= 10^7.
AllocationVector exact_owen(const GameSpec& game, const PartitionStructure& partition);

/// Banzhaf-Owen value: average over coalitions of whole foreign unions plus
/// subsets of the player's own union. Cap: n <= 25.
AllocationVector exact_banzhaf_owen(const GameSpec& game, const PartitionStructure& partition);

} // namespace gtcent
