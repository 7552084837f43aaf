#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gtcent/games.hpp"
#include "gtcent/partition.hpp"

namespace gtcent {

enum class EstimatorMethod {
    BanzhafSimple,
    BanzhafOwenTwoStage,
    ShapleyPermutation,
    OwenCompatiblePermutation,
};

const char* to_string(EstimatorMethod method);
EstimatorMethod estimator_method_from_string(const std::string& name);

struct EstimatorConfig {
    EstimatorMethod method = EstimatorMethod::BanzhafSimple;
    std::uint64_t ell = 0;   // simple / permutation sample count
    std::uint64_t ell_r = 0; // two-stage outer sample count
    std::uint64_t ell_s = 0; // two-stage inner sample count
    std::uint64_t seed = 0;

    /// ell > 1 for simple/permutation methods; ell_r, ell_s >= 1 for the
    /// two-stage method. Throws ValidationError.
    void validate() const;
};

struct AllocationEstimate {
    AllocationVector values;
    EstimatorConfig config;
    // Sample sizes actually used per player, after population-size caps
    // (2^{n-1}, 2^{m-1}, 2^{p_i-1}). ell_r/ell_s entries only for the
    // two-stage method.
    std::vector<std::uint64_t> effective_ell;
    std::vector<std::uint64_t> effective_ell_r;
    std::vector<std::uint64_t> effective_ell_s;
    double wall_seconds = 0.0;
    double cpu_seconds = 0.0;
};

struct ErrorBudget {
    double epsilon = 0.0; // additive error, > 0
    double alpha = 0.0;   // failure probability, in (0,1)
    double r = 0.0;       // contribution range, >= 0

    void validate() const;
};

/// Smallest integer ell >= min{1/(4*alpha*eps^2), ln(2/alpha)/(2*eps^2)} * r^2.
/// Guarantees P(|estimate - Bz_i| >= eps) <= alpha whenever ell draws are
/// actually taken (i.e. the result does not exceed the 2^{n-1} cap).
std::uint64_t banzhaf_sample_size(const ErrorBudget& budget);

/// Inverse of banzhaf_sample_size: eps = r * sqrt(min{1/(4*alpha*ell),
/// ln(2/alpha)/(2*ell)}). Requires ell > 1, alpha in (0,1), r >= 0.
double banzhaf_error_bound(std::uint64_t ell, double alpha, double r);

enum class VarianceConvention { Population, PaperMinusOne };

struct VariancePrediction {
    double theta_a_sq = 0.0;      // between-union variance component
    double theta_b_sq = 0.0;      // average within-union variance component
    double predicted_variance = 0.0; // (1/ell_r) * (theta_a^2 + theta_b^2/ell_s)
    VarianceConvention convention = VarianceConvention::Population;
    std::uint64_t ell_r_effective = 0;
    std::uint64_t ell_s_effective = 0;
};

/// Exact variance components of the two-stage estimator for player i,
/// by full enumeration of the compatible-coalition population.
/// Cap: 2^{m-1} * 2^{p_i-1} <= 10^7. Under PaperMinusOne the divisors are
/// 2^{m-1}-1 and 2^{p_i-1}-1; a zero divisor raises ValidationError
/// (use Population instead).
VariancePrediction bzo_variance_prediction(const GameSpec& game, const PartitionStructure& partition,
                                           int player, std::uint64_t ell_r, std::uint64_t ell_s,
                                           VarianceConvention convention);

// OpenMP-parallel estimators. Output is a pure function of (game, partition,
// config): per-task random substreams and fixed-order reductions make the
// result independent of the number of worker threads, and bit-identical to
// the serial reference in sampling_serial.hpp.

/// Per player, the mean marginal contribution over ell coalitions drawn
/// uniformly (independent fair coin per other node), with replacement.
AllocationEstimate estimate_banzhaf(const GameSpec& game, const EstimatorConfig& config);

/// Two-stage estimator: ell_r coalitions of foreign unions, each refined by
/// ell_s subsets of the player's own union; mean of inner means.
AllocationEstimate estimate_banzhaf_owen(const GameSpec& game, const PartitionStructure& partition,
                                         const EstimatorConfig& config);

/// Mean marginal contribution over ell uniform permutations, all players
/// accumulated in one pass per permutation.
AllocationEstimate estimate_shapley(const GameSpec& game, const EstimatorConfig& config);

/// As estimate_shapley but over ell uniform compatible permutations
/// (uniform union order, then uniform order within each union).
AllocationEstimate estimate_owen(const GameSpec& game, const PartitionStructure& partition,
                                 const EstimatorConfig& config);

/// Dispatches on config.method. Partition methods require a non-null
/// partition.
AllocationEstimate run_estimator(const GameSpec& game, const PartitionStructure* partition,
                                 const EstimatorConfig& config);

struct ReplicationResult {
    std::vector<AllocationEstimate> replicates;
    AllocationEstimate averaged; // arithmetic mean of the replicate vectors
};

/// Runs the configured estimator `reps` times with independent substream
/// seeds derived from `master_seed`. Methods that need no partition accept
/// nullptr.
ReplicationResult replicate(const GameSpec& game, const PartitionStructure* partition,
                            const EstimatorConfig& config, int reps, std::uint64_t master_seed);

} // namespace gtcent
