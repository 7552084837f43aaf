#pragma once

#include <iosfwd>
#include <vector>

#include "gtcent/coalition.hpp"
#include "gtcent/network.hpp"

namespace gtcent {

/// Per-player value vector aligned with the network's node ordering.
using AllocationVector = std::vector<double>;

/// A-priori unions: a partition of the player set into non-empty,
/// pairwise-disjoint blocks.
class PartitionStructure {
public:
    /// `union_of` holds the 0-based union index of each node; indices must
    /// cover 0..m-1 with no empty union.
    static PartitionStructure build(const std::vector<int>& union_of);
    static PartitionStructure singletons(int n);
    static PartitionStructure grand(int n);

    /// Parses lines of the form `label = union-index` (1-based). Every node
    /// of `net` must appear exactly once.
    static PartitionStructure parse(std::istream& in, const WeightedNetwork& net);

    int union_count() const { return static_cast<int>(unions_.size()); }
    int player_count() const { return static_cast<int>(union_of_.size()); }
    const std::vector<Coalition>& unions() const { return unions_; }
    Coalition union_mask(int u) const { return unions_[static_cast<std::size_t>(u)]; }
    int union_of(int node) const { return union_of_[static_cast<std::size_t>(node)]; }
    int union_size(int u) const { return unions_[static_cast<std::size_t>(u)].size(); }

private:
    std::vector<Coalition> unions_;
    std::vector<int> union_of_;
};

} // namespace gtcent
