#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtcent/network.hpp"
#include "gtcent/partition.hpp"
#include "gtcent/reporting.hpp"

namespace gtcent::io {

/// FNV-1a 64-bit digest of a byte string, as 16 hex characters.
std::string fnv1a_hex(const std::string& bytes);

/// Reads a whole file; throws ValidationError if it cannot be opened.
std::string read_file(const std::string& path);

struct LoadedNetwork {
    WeightedNetwork net;
    // (key, digest) pairs for provenance: nodes, edges, relations when used.
    std::vector<std::pair<std::string, std::string>> digests;
};

LoadedNetwork load_network(const std::string& nodes_path, const std::string& edges_path,
                           const std::optional<std::string>& relations_path);

PartitionStructure load_partition(const std::string& path, const WeightedNetwork& net);

/// Ordered key=value manifest embedded as `# key=value` lines in every
/// output file. Contains no timestamps, so reruns are byte-identical.
using Metadata = std::vector<std::pair<std::string, std::string>>;

// All numeric table cells print with 6 decimals; full-precision values are
// carried in the metadata block.

void write_allocation_file(const std::string& path, const std::vector<std::string>& labels,
                           const AllocationVector& values, const Metadata& meta);

struct AllocationFile {
    std::vector<std::string> labels;
    AllocationVector values;       // full-precision when present, else table values
    Metadata meta;
};

AllocationFile read_allocation_file(const std::string& path);

void write_ranking_file(const std::string& path, const RankingTable& table, const Metadata& meta);
RankingTable read_ranking_file(const std::string& path);

void write_summary_file(const std::string& path, const std::vector<std::string>& labels,
                        const ReplicationSummary& summary, const Metadata& meta);

void write_lorenz_file(const std::string& path, const LorenzCurve& curve, const Metadata& meta);

void write_comparison_file(const std::string& path, const RankingComparison& cmp, const Metadata& meta);
std::string format_comparison(const RankingComparison& cmp, const Metadata& meta);

} // namespace gtcent::io
