#include "gtcent/sampling_serial.hpp"

#include <algorithm>
#include <numeric>

#include "gtcent/detail/sampling_impl.hpp"
#include "gtcent/rng.hpp"

// Reference implementations written as plain loops, independent of the
// OpenMP kernels. They follow the same substream and block-accumulation
// contract, so any divergence from the parallel results is a bug.

namespace gtcent::serial {

AllocationEstimate estimate_banzhaf(const GameSpec& game, const EstimatorConfig& config) {
    config.validate();
    const detail::StopWatch watch;
    const int n = game.network().size();
    const std::uint64_t eff = std::min(config.ell, detail::pow2_saturated(n - 1));
    const Coalition full = Coalition::full(n);

    AllocationEstimate est;
    est.config = config;
    est.values.assign(static_cast<std::size_t>(n), 0.0);
    est.effective_ell.assign(static_cast<std::size_t>(n), eff);
    for (int i = 0; i < n; ++i) {
        rng::Substream stream(config.seed, rng::Stream::Banzhaf, static_cast<std::uint64_t>(i));
        const std::uint64_t others = full.without(i).bits();
        double sum = 0.0;
        for (std::uint64_t t = 0; t < eff; ++t) {
            const Coalition S{stream.mask(n) & others};
            sum += game.value(S.with(i)) - game.value(S);
        }
        est.values[static_cast<std::size_t>(i)] = sum / static_cast<double>(eff);
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
    for (int i = 0; i < n; ++i) {
        const int own = partition.union_of(i);
        const int p_i = partition.union_size(own);
        const std::uint64_t eff_r = std::min(config.ell_r, detail::pow2_saturated(m - 1));
        const std::uint64_t eff_s = std::min(config.ell_s, detail::pow2_saturated(p_i - 1));
        const std::uint64_t foreign_slots = Coalition::full(m).without(own).bits();
        const std::uint64_t own_others = partition.union_mask(own).without(i).bits();
        rng::Substream stream(config.seed, rng::Stream::BanzhafOwen, static_cast<std::uint64_t>(i));

        double outer = 0.0;
        for (std::uint64_t j = 0; j < eff_r; ++j) {
            Coalition base;
            if (m > 1) {
                for (std::uint64_t ub = stream.word() & foreign_slots; ub != 0; ub &= ub - 1)
                    base = base | partition.union_mask(std::countr_zero(ub));
            }
            double inner = 0.0;
            for (std::uint64_t k = 0; k < eff_s; ++k) {
                Coalition S = base;
                if (p_i > 1) S = S | Coalition{stream.word() & own_others};
                inner += game.value(S.with(i)) - game.value(S);
            }
            outer += inner / static_cast<double>(eff_s);
        }
        est.values[static_cast<std::size_t>(i)] = outer / static_cast<double>(eff_r);
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

    AllocationEstimate est;
    est.config = config;
    est.values.assign(static_cast<std::size_t>(n), 0.0);
    est.effective_ell.assign(static_cast<std::size_t>(n), ell);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::vector<double> block_acc(static_cast<std::size_t>(n));
    for (std::uint64_t blk = 0; blk < nblocks; ++blk) {
        rng::Substream stream(config.seed, rng::Stream::ShapleyBlock, blk);
        std::fill(block_acc.begin(), block_acc.end(), 0.0);
        const std::uint64_t lo = blk * detail::kPermBlock;
        const std::uint64_t hi = std::min(ell, lo + detail::kPermBlock);
        for (std::uint64_t t = lo; t < hi; ++t) {
            std::iota(perm.begin(), perm.end(), 0);
            stream.shuffle(perm);
            Coalition prefix;
            double vprev = 0.0;
            for (int k = 0; k < n; ++k) {
                const int player = perm[static_cast<std::size_t>(k)];
                prefix = prefix.with(player);
                const double vcur = game.value(prefix);
                block_acc[static_cast<std::size_t>(player)] += vcur - vprev;
                vprev = vcur;
            }
        }
        for (int i = 0; i < n; ++i)
            est.values[static_cast<std::size_t>(i)] += block_acc[static_cast<std::size_t>(i)];
    }
    for (double& x : est.values) x /= static_cast<double>(ell);
    watch.record(est);
    return est;
}

AllocationEstimate estimate_owen(const GameSpec& game, const PartitionStructure& partition,
                                 const EstimatorConfig& config) {
    config.validate();
    const detail::StopWatch watch;
    const int n = game.network().size();
    const int m = partition.union_count();
    const std::uint64_t ell = config.ell;
    const std::uint64_t nblocks = (ell + detail::kPermBlock - 1) / detail::kPermBlock;

    AllocationEstimate est;
    est.config = config;
    est.values.assign(static_cast<std::size_t>(n), 0.0);
    est.effective_ell.assign(static_cast<std::size_t>(n), ell);
    std::vector<int> union_order(static_cast<std::size_t>(m));
    std::vector<std::vector<int>> within(static_cast<std::size_t>(m));
    std::vector<double> block_acc(static_cast<std::size_t>(n));
    for (std::uint64_t blk = 0; blk < nblocks; ++blk) {
        rng::Substream stream(config.seed, rng::Stream::OwenBlock, blk);
        std::fill(block_acc.begin(), block_acc.end(), 0.0);
        const std::uint64_t lo = blk * detail::kPermBlock;
        const std::uint64_t hi = std::min(ell, lo + detail::kPermBlock);
        for (std::uint64_t t = lo; t < hi; ++t) {
            std::iota(union_order.begin(), union_order.end(), 0);
            stream.shuffle(union_order);
            for (int u = 0; u < m; ++u) {
                within[static_cast<std::size_t>(u)] = partition.union_mask(u).members();
                stream.shuffle(within[static_cast<std::size_t>(u)]);
            }
            Coalition prefix;
            double vprev = 0.0;
            for (int slot = 0; slot < m; ++slot) {
                for (const int player :
                     within[static_cast<std::size_t>(union_order[static_cast<std::size_t>(slot)])]) {
                    prefix = prefix.with(player);
                    const double vcur = game.value(prefix);
                    block_acc[static_cast<std::size_t>(player)] += vcur - vprev;
                    vprev = vcur;
                }
            }
        }
        for (int i = 0; i < n; ++i)
            est.values[static_cast<std::size_t>(i)] += block_acc[static_cast<std::size_t>(i)];
    }
    for (double& x : est.values) x /= static_cast<double>(ell);
    watch.record(est);
    return est;
}

} // namespace gtcent::serial
