#pragma once

#include <string>
#include <vector>

#include "gtcent/partition.hpp"

namespace gtcent {

struct RankingRow {
    int position = 0;
    std::string label;
    double allocation = 0.0;
};

/// Rows sorted by non-increasing allocation, ties broken by ascending label;
/// positions run 1..n.
struct RankingTable {
    std::vector<RankingRow> rows;
};

RankingTable rank(const AllocationVector& alloc, const std::vector<std::string>& labels);

struct PlayerSummary {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double mean = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    double cv = 0.0; // sample sd (reps-1 divisor) / mean
};

/// Per-player order statistics across replicated allocation vectors,
/// aligned with node order. Quartiles use linear interpolation between
/// order statistics. Requires >= 2 replicates.
struct ReplicationSummary {
    std::vector<PlayerSummary> per_player;
};

ReplicationSummary summarize(const std::vector<AllocationVector>& replicates);

/// Cumulative-share curve over ascending-sorted allocations:
/// points (k/n, sum of k smallest / total) for k = 0..n.
struct LorenzCurve {
    std::vector<double> u;
    std::vector<double> L;
};

/// Requires all allocations >= 0 and at least one positive entry.
LorenzCurve lorenz(const AllocationVector& alloc);

struct RankingComparison {
    struct Delta {
        std::string label;
        int position_a = 0;
        int position_b = 0;
        int delta = 0; // position_b - position_a
    };
    int k = 0;
    int overlap = 0;                    // |top-k(a) ∩ top-k(b)|
    std::vector<std::string> entering;  // in b's top-k but not a's
    std::vector<std::string> leaving;   // in a's top-k but not b's
    std::vector<Delta> deltas;          // ordered by position in a
};

/// Requires identical label sets; k is clamped to the table size.
RankingComparison compare_rankings(const RankingTable& a, const RankingTable& b, int k);

} // namespace gtcent
