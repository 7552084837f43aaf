#include "gtcent/sampling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <numeric>

#include "gtcent/detail/sampling_impl.hpp"
#include "gtcent/errors.hpp"
#include "gtcent/parallel.hpp"
#include "gtcent/rng.hpp"

namespace gtcent {

const char* to_string(EstimatorMethod method) {
    switch (method) {
        case EstimatorMethod::BanzhafSimple: return "banzhaf";
        case EstimatorMethod::BanzhafOwenTwoStage: return "banzhaf-owen";
        case EstimatorMethod::ShapleyPermutation: return "shapley";
        case EstimatorMethod::OwenCompatiblePermutation: return "owen";
    }
    return "?";
}

EstimatorMethod estimator_method_from_string(const std::string& name) {
    if (name == "banzhaf") return EstimatorMethod::BanzhafSimple;
    if (name == "banzhaf-owen") return EstimatorMethod::BanzhafOwenTwoStage;
    if (name == "shapley") return EstimatorMethod::ShapleyPermutation;
    if (name == "owen") return EstimatorMethod::OwenCompatiblePermutation;
    throw ValidationError("unknown estimator method '" + name + "'");
}

void EstimatorConfig::validate() const {
    if (method == EstimatorMethod::BanzhafOwenTwoStage) {
        if (ell_r < 1 || ell_s < 1)
            throw ValidationError("two-stage estimator requires ell_r >= 1 and ell_s >= 1");
    } else {
        if (ell <= 1) throw ValidationError("estimator requires ell > 1");
    }
}

void ErrorBudget::validate() const {
    if (!(epsilon > 0.0)) throw ValidationError("error budget requires epsilon > 0");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("error budget requires alpha in (0,1)");
    if (!(r >= 0.0)) throw ValidationError("error budget requires r >= 0");
}

std::uint64_t banzhaf_sample_size(const ErrorBudget& budget) {
    budget.validate();
    if (budget.r == 0.0) return 1;
    const double e2 = budget.epsilon * budget.epsilon;
    const double chebyshev = 1.0 / (4.0 * budget.alpha * e2);
    const double hoeffding = std::log(2.0 / budget.alpha) / (2.0 * e2);
    const double need = std::min(chebyshev, hoeffding) * budget.r * budget.r;
    const double ell = std::ceil(need);
    if (ell < 1.0) return 1;
    if (ell >= 18446744073709549568.0) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(ell);
}

double banzhaf_error_bound(std::uint64_t ell, double alpha, double r) {
    if (ell <= 1) throw ValidationError("error bound requires ell > 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("error bound requires alpha in (0,1)");
    if (!(r >= 0.0)) throw ValidationError("error bound requires r >= 0");
    const double l = static_cast<double>(ell);
    const double chebyshev = 1.0 / (4.0 * alpha * l);
    const double hoeffding = std::log(2.0 / alpha) / (2.0 * l);
    return r * std::sqrt(std::min(chebyshev, hoeffding));
}

namespace {

double banzhaf_player_sum(const GameSpec& game, int player, std::uint64_t draws,
                          rng::Substream& stream) {
    const int n = game.network().size();
    const std::uint64_t others = Coalition::full(n).without(player).bits();
    double sum = 0.0;
    for (std::uint64_t t = 0; t < draws; ++t) {
        const Coalition S{stream.mask(n) & others};
        sum += game.value(S.with(player)) - game.value(S);
    }
    return sum;
}

double bzo_player_mean(const GameSpec& game, const PartitionStructure& partition, int player,
                       std::uint64_t draws_r, std::uint64_t draws_s, rng::Substream& stream) {
    const int m = partition.union_count();
    const int own = partition.union_of(player);
    const int p_i = partition.union_size(own);
    const std::uint64_t foreign_slots =
        Coalition::full(m).without(own).bits();
    const std::uint64_t own_others = partition.union_mask(own).without(player).bits();

    double outer = 0.0;
    for (std::uint64_t j = 0; j < draws_r; ++j) {
        Coalition base;
        if (m > 1) {
            for (std::uint64_t ub = stream.word() & foreign_slots; ub != 0; ub &= ub - 1)
                base = base | partition.union_mask(std::countr_zero(ub));
        }
        double inner = 0.0;
        for (std::uint64_t k = 0; k < draws_s; ++k) {
            Coalition S = base;
            if (p_i > 1) S = S | Coalition{stream.word() & own_others};
            inner += game.value(S.with(player)) - game.value(S);
        }
        outer += inner / static_cast<double>(draws_s);
    }
    return outer / static_cast<double>(draws_r);
}

void shapley_block(const GameSpec& game, std::uint64_t seed, std::uint64_t block,
                   std::uint64_t count, double* acc) {
    const int n = game.network().size();
    rng::Substream stream(seed, rng::Stream::ShapleyBlock, block);
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (std::uint64_t t = 0; t < count; ++t) {
        std::iota(perm.begin(), perm.end(), 0);
        stream.shuffle(perm);
        Coalition prefix;
        double vprev = 0.0;
        for (int k = 0; k < n; ++k) {
            const int player = perm[static_cast<std::size_t>(k)];
            prefix = prefix.with(player);
            const double vcur = game.value(prefix);
            acc[player] += vcur - vprev;
            vprev = vcur;
        }
    }
}

void owen_block(const GameSpec& game, const PartitionStructure& partition, std::uint64_t seed,
                std::uint64_t block, std::uint64_t count, double* acc) {
    const int m = partition.union_count();
    rng::Substream stream(seed, rng::Stream::OwenBlock, block);
    std::vector<int> union_order(static_cast<std::size_t>(m));
    std::vector<std::vector<int>> within(static_cast<std::size_t>(m));
    for (std::uint64_t t = 0; t < count; ++t) {
        std::iota(union_order.begin(), union_order.end(), 0);
        stream.shuffle(union_order);
        // within-union shuffles always consume randomness in union-index
        // order, independent of the drawn union order
        for (int u = 0; u < m; ++u) {
            within[static_cast<std::size_t>(u)] = partition.union_mask(u).members();
            stream.shuffle(within[static_cast<std::size_t>(u)]);
        }
        Coalition prefix;
        double vprev = 0.0;
        for (int slot = 0; slot < m; ++slot) {
            for (const int player : within[static_cast<std::size_t>(union_order[static_cast<std::size_t>(slot)])]) {
                prefix = prefix.with(player);
                const double vcur = game.value(prefix);
                acc[player] += vcur - vprev;
                vprev = vcur;
            }
        }
    }
}

} // namespace

AllocationEstimate estimate_banzhaf(const GameSpec& game, const EstimatorConfig& config) {
    config.validate();
    const detail::StopWatch watch;
    const int n = game.network().size();
    const std::uint64_t eff = std::min(config.ell, detail::pow2_saturated(n - 1));

    AllocationEstimate est;
    est.config = config;
    est.values.assign(static_cast<std::size_t>(n), 0.0);
    est.effective_ell.assign(static_cast<std::size_t>(n), eff);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        rng::Substream stream(config.seed, rng::Stream::Banzhaf, static_cast<std::uint64_t>(i));
        est.values[static_cast<std::size_t>(i)] =
            banzhaf_player_sum(game, i, eff, stream) / static_cast<double>(eff);
    }
    watch.record(est);
    return est;
}

AllocationEstimate estimate_banzhaf_owen(const GameSpec& game, const PartitionStructure& partition,
                                         const EstimatorConfig& config) {
    config.validate();
    const detail::StopWatch watch;
    const int n = game.network().size();
    const int m = partition.union_count();

    AllocationEstimate est;
    est.config = config;
    est.values.assign(static_cast<std::size_t>(n), 0.0);
    est.effective_ell.assign(static_cast<std::size_t>(n), 0);
    est.effective_ell_r.assign(static_cast<std::size_t>(n), 0);
    est.effective_ell_s.assign(static_cast<std::size_t>(n), 0);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        const int p_i = partition.union_size(partition.union_of(i));
        const std::uint64_t eff_r = std::min(config.ell_r, detail::pow2_saturated(m - 1));
        const std::uint64_t eff_s = std::min(config.ell_s, detail::pow2_saturated(p_i - 1));
        rng::Substream stream(config.seed, rng::Stream::BanzhafOwen, static_cast<std::uint64_t>(i));
        est.values[static_cast<std::size_t>(i)] =
            bzo_player_mean(game, partition, i, eff_r, eff_s, stream);
        est.effective_ell[static_cast<std::size_t>(i)] = eff_r * eff_s;
        est.effective_ell_r[static_cast<std::size_t>(i)] = eff_r;
        est.effective_ell_s[static_cast<std::size_t>(i)] = eff_s;
    }
    watch.record(est);
    return est;
}

AllocationEstimate estimate_shapley(const GameSpec& game, const EstimatorConfig& config) {
    config.validate();
    const detail::StopWatch watch;
    const int n = game.network().size();
    const std::uint64_t ell = config.ell;
    const std::uint64_t nblocks = (ell + detail::kPermBlock - 1) / detail::kPermBlock;

    std::vector<std::vector<double>> partial(static_cast<std::size_t>(nblocks),
                                             std::vector<double>(static_cast<std::size_t>(n), 0.0));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(nblocks); ++blk) {
        const std::uint64_t lo = static_cast<std::uint64_t>(blk) * detail::kPermBlock;
        const std::uint64_t count = std::min(ell - lo, detail::kPermBlock);
        shapley_block(game, config.seed, static_cast<std::uint64_t>(blk), count,
                              partial[static_cast<std::size_t>(blk)].data());
    }

    AllocationEstimate est;
    est.config = config;
    est.values.assign(static_cast<std::size_t>(n), 0.0);
    est.effective_ell.assign(static_cast<std::size_t>(n), ell);
    for (std::uint64_t blk = 0; blk < nblocks; ++blk)
        for (int i = 0; i < n; ++i)
            est.values[static_cast<std::size_t>(i)] +=
                partial[static_cast<std::size_t>(blk)][static_cast<std::size_t>(i)];
    for (double& x : est.values) x /= static_cast<double>(ell);
    watch.record(est);
    return est;
}

AllocationEstimate estimate_owen(const GameSpec& game, const PartitionStructure& partition,
                                 const EstimatorConfig& config) {
    config.validate();
    const detail::StopWatch watch;
    const int n = game.network().size();
    const std::uint64_t ell = config.ell;
    const std::uint64_t nblocks = (ell + detail::kPermBlock - 1) / detail::kPermBlock;

    std::vector<std::vector<double>> partial(static_cast<std::size_t>(nblocks),
                                             std::vector<double>(static_cast<std::size_t>(n), 0.0));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(nblocks); ++blk) {
        const std::uint64_t lo = static_cast<std::uint64_t>(blk) * detail::kPermBlock;
        const std::uint64_t count = std::min(ell - lo, detail::kPermBlock);
        owen_block(game, partition, config.seed, static_cast<std::uint64_t>(blk), count,
                           partial[static_cast<std::size_t>(blk)].data());
    }

    AllocationEstimate est;
    est.config = config;
    est.values.assign(static_cast<std::size_t>(n), 0.0);
    est.effective_ell.assign(static_cast<std::size_t>(n), ell);
    for (std::uint64_t blk = 0; blk < nblocks; ++blk)
        for (int i = 0; i < n; ++i)
            est.values[static_cast<std::size_t>(i)] +=
                partial[static_cast<std::size_t>(blk)][static_cast<std::size_t>(i)];
    for (double& x : est.values) x /= static_cast<double>(ell);
    watch.record(est);
    return est;
}

VariancePrediction bzo_variance_prediction(const GameSpec& game, const PartitionStructure& partition,
                                           int player, std::uint64_t ell_r, std::uint64_t ell_s,
                                           VarianceConvention convention) {
    if (ell_r < 1 || ell_s < 1)
        throw ValidationError("variance prediction requires ell_r >= 1 and ell_s >= 1");
    const int m = partition.union_count();
    const int own = partition.union_of(player);
    const int p_i = partition.union_size(own);
    const std::uint64_t count_r = detail::pow2_saturated(m - 1);
    const std::uint64_t count_s = detail::pow2_saturated(p_i - 1);
    if (count_r > 10'000'000ULL / count_s)
        throw CapacityError("variance prediction: 2^{m-1} * 2^{p_i-1} exceeds 10^7");
    if (convention == VarianceConvention::PaperMinusOne && (count_r == 1 || count_s == 1))
        throw ValidationError(
            "PaperMinusOne convention divides by zero when 2^{m-1} or 2^{p_i-1} is 1; "
            "use the Population convention");

    std::vector<Coalition> foreign;
    foreign.reserve(static_cast<std::size_t>(m - 1));
    for (int u = 0; u < m; ++u)
        if (u != own) foreign.push_back(partition.union_mask(u));
    const std::uint64_t own_others = partition.union_mask(own).without(player).bits();

    double mean_sum = 0.0, mean_sq_sum = 0.0, within_ss_sum = 0.0;
    for (std::uint64_t rbits = 0; rbits < count_r; ++rbits) {
        Coalition base;
        for (std::uint64_t b = rbits; b != 0; b &= b - 1)
            base = base | foreign[static_cast<std::size_t>(std::countr_zero(b))];
        double sum_x = 0.0, sum_x2 = 0.0;
        std::uint64_t sub = 0;
        for (;;) {
            const Coalition S = base | Coalition{sub};
            const double x = game.value(S.with(player)) - game.value(S);
            sum_x += x;
            sum_x2 += x * x;
            if (sub == own_others) break;
            sub = (sub - own_others) & own_others;
        }
        const double mean_r = sum_x / static_cast<double>(count_s);
        mean_sum += mean_r;
        mean_sq_sum += mean_r * mean_r;
        within_ss_sum += std::max(0.0, sum_x2 - static_cast<double>(count_s) * mean_r * mean_r);
    }

    const double cr = static_cast<double>(count_r);
    const double overall = mean_sum / cr;
    VariancePrediction out;
    out.convention = convention;
    out.ell_r_effective = std::min(ell_r, count_r);
    out.ell_s_effective = std::min(ell_s, count_s);
    if (convention == VarianceConvention::Population) {
        out.theta_a_sq = std::max(0.0, mean_sq_sum / cr - overall * overall);
        out.theta_b_sq = within_ss_sum / static_cast<double>(count_s) / cr;
    } else {
        out.theta_a_sq = std::max(0.0, (mean_sq_sum - cr * overall * overall) /
                                           (cr - 1.0));
        out.theta_b_sq = within_ss_sum / static_cast<double>(count_s - 1) / cr;
    }
    out.predicted_variance =
        (out.theta_a_sq + out.theta_b_sq / static_cast<double>(out.ell_s_effective)) /
        static_cast<double>(out.ell_r_effective);
    return out;
}

AllocationEstimate run_estimator(const GameSpec& game, const PartitionStructure* partition,
                                 const EstimatorConfig& config) {
    switch (config.method) {
        case EstimatorMethod::BanzhafSimple:
            return estimate_banzhaf(game, config);
        case EstimatorMethod::ShapleyPermutation:
            return estimate_shapley(game, config);
        case EstimatorMethod::BanzhafOwenTwoStage:
            if (partition == nullptr)
                throw ValidationError("banzhaf-owen estimator requires a partition");
            return estimate_banzhaf_owen(game, *partition, config);
        case EstimatorMethod::OwenCompatiblePermutation:
            if (partition == nullptr)
                throw ValidationError("owen estimator requires a partition");
            return estimate_owen(game, *partition, config);
    }
    throw ValidationError("unknown estimator method");
}

ReplicationResult replicate(const GameSpec& game, const PartitionStructure* partition,
                            const EstimatorConfig& config, int reps, std::uint64_t master_seed) {
    if (reps < 1) throw ValidationError("replicate requires reps >= 1");
    ReplicationResult result;
    result.replicates.reserve(static_cast<std::size_t>(reps));
    for (int rep = 0; rep < reps; ++rep) {
        EstimatorConfig cfg = config;
        cfg.seed = rng::substream_seed(master_seed, rng::Stream::Replicate,
                                       static_cast<std::uint64_t>(rep));
        result.replicates.push_back(run_estimator(game, partition, cfg));
    }

    const int n = game.network().size();
    AllocationEstimate avg;
    avg.config = config;
    avg.config.seed = master_seed;
    avg.values.assign(static_cast<std::size_t>(n), 0.0);
    for (const AllocationEstimate& est : result.replicates)
        for (int i = 0; i < n; ++i)
            avg.values[static_cast<std::size_t>(i)] += est.values[static_cast<std::size_t>(i)];
    for (double& x : avg.values) x /= static_cast<double>(reps);
    avg.effective_ell = result.replicates.front().effective_ell;
    avg.effective_ell_r = result.replicates.front().effective_ell_r;
    avg.effective_ell_s = result.replicates.front().effective_ell_s;
    for (const AllocationEstimate& est : result.replicates) {
        avg.wall_seconds += est.wall_seconds;
        avg.cpu_seconds += est.cpu_seconds;
    }
    result.averaged = std::move(avg);
    return result;
}

} // namespace gtcent
