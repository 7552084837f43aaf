#pragma once

#include <string>

#include "gtcent/network.hpp"
#include "gtcent/partition.hpp"

namespace gtcent::fixtures {

/// Three-node demo network: a(1)-b(2)-c(1) with edge weights ab=2, bc=3.
WeightedNetwork tri_network();

/// TRI partition {{a,b},{c}}.
PartitionStructure tri_partition(const WeightedNetwork& net);

/// The 13-relationship vocabulary with final edge weights.
RelationMap default_relation_map();

/// Deterministic 47-member synthetic network: 42 members at weight 1 plus
/// five heavier ones (4, 4, 5, 3, 2), edges labelled from the default
/// relationship vocabulary. Range bound is 60 * 5 = 300.
WeightedNetwork synthetic47_network();

/// Ten-union partition of the synthetic network, block sizes
/// 3,12,7,4,4,4,7,2,2,2.
PartitionStructure synthetic47_partition(const WeightedNetwork& net);

/// Materializes both fixtures as CSV/map/partition files under `dir`
/// (created if needed). Returns the list of file paths written.
std::vector<std::string> write_fixture_files(const std::string& dir);

} // namespace gtcent::fixtures
