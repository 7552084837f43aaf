#include "gtcent/exact.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "gtcent/errors.hpp"
#include "gtcent/parallel.hpp"

namespace gtcent {

namespace {

constexpr int kSubsetCap = 25;       // 2^{n-1} subset enumerations per player
constexpr std::uint64_t kOwenCap = 10'000'000; // compatible permutation count
constexpr int kOwenNodeCap = 20;
constexpr std::uint64_t kOwenBlock = 4096;

std::uint64_t factorial(int k) {
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

/// Lehmer-code unranking of the rank-th permutation of `items` (ascending
/// rank order). `items` and `out` hold k entries.
void unrank_permutation(std::uint64_t rank, int k, const int* items, int* out) {
    std::array<int, 64> avail{};
    for (int i = 0; i < k; ++i) avail[static_cast<std::size_t>(i)] = items[i];
    int remaining = k;
    for (int i = 0; i < k; ++i) {
        const std::uint64_t f = factorial(remaining - 1);
        const int d = static_cast<int>(rank / f);
        rank %= f;
        out[i] = avail[static_cast<std::size_t>(d)];
        for (int j = d; j + 1 < remaining; ++j)
            avail[static_cast<std::size_t>(j)] = avail[static_cast<std::size_t>(j + 1)];
        --remaining;
    }
}

/// Enumerates submasks of `mask` (including 0 and mask itself), invoking
/// fn(sub) for each.
template <typename Fn>
void for_each_submask(std::uint64_t mask, Fn&& fn) {
    std::uint64_t sub = 0;
    for (;;) {
        fn(sub);
        if (sub == mask) break;
        sub = (sub - mask) & mask;
    }
}

} // namespace

AllocationVector exact_shapley(const GameSpec& game) {
    const int n = game.network().size();
    if (n > kSubsetCap)
        throw CapacityError("exact_shapley: n = " + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(kSubsetCap));
    // subset weights |S|!(n-1-|S|)!/n! via log-factorials
    std::vector<double> lfact(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 1; k <= n; ++k)
        lfact[static_cast<std::size_t>(k)] = lfact[static_cast<std::size_t>(k - 1)] + std::log(static_cast<double>(k));
    std::vector<double> weight(static_cast<std::size_t>(n), 0.0);
    for (int s = 0; s < n; ++s)
        weight[static_cast<std::size_t>(s)] = std::exp(lfact[static_cast<std::size_t>(s)] +
                                                       lfact[static_cast<std::size_t>(n - 1 - s)] -
                                                       lfact[static_cast<std::size_t>(n)]);

    AllocationVector out(static_cast<std::size_t>(n), 0.0);
    const std::uint64_t full = Coalition::full(n).bits();
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        const std::uint64_t others = full & ~(std::uint64_t{1} << i);
        double acc = 0.0;
        for_each_submask(others, [&](std::uint64_t sub) {
            const Coalition S{sub};
            acc += weight[static_cast<std::size_t>(S.size())] *
                   (game.value(S.with(i)) - game.value(S));
        });
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

AllocationVector exact_banzhaf(const GameSpec& game) {
    const int n = game.network().size();
    if (n > kSubsetCap)
        throw CapacityError("exact_banzhaf: n = " + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(kSubsetCap));
    AllocationVector out(static_cast<std::size_t>(n), 0.0);
    const std::uint64_t full = Coalition::full(n).bits();
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        const std::uint64_t others = full & ~(std::uint64_t{1} << i);
        double acc = 0.0;
        for_each_submask(others, [&](std::uint64_t sub) {
            const Coalition S{sub};
            acc += game.value(S.with(i)) - game.value(S);
        });
        out[static_cast<std::size_t>(i)] = std::ldexp(acc, -(n - 1));
    }
    return out;
}

AllocationVector exact_owen(const GameSpec& game, const PartitionStructure& partition) {
    const int n = game.network().size();
    const int m = partition.union_count();
    if (n > kOwenNodeCap)
        throw CapacityError("exact_owen: n = " + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(kOwenNodeCap));
    std::uint64_t inner_total = 1;
    for (int u = 0; u < m; ++u) {
        inner_total *= factorial(partition.union_size(u));
        if (inner_total > kOwenCap)
            throw CapacityError("exact_owen: compatible-permutation count exceeds " +
                                std::to_string(kOwenCap));
    }
    const std::uint64_t fact_m = factorial(m);
    if (fact_m > kOwenCap / inner_total)
        throw CapacityError("exact_owen: compatible-permutation count exceeds " +
                            std::to_string(kOwenCap));
    const std::uint64_t total = fact_m * inner_total;

    std::vector<std::vector<int>> members(static_cast<std::size_t>(m));
    for (int u = 0; u < m; ++u) members[static_cast<std::size_t>(u)] = partition.union_mask(u).members();
    std::vector<int> union_ids(static_cast<std::size_t>(m));
    for (int u = 0; u < m; ++u) union_ids[static_cast<std::size_t>(u)] = u;

    const std::uint64_t nblocks = (total + kOwenBlock - 1) / kOwenBlock;
    std::vector<std::vector<double>> partial(static_cast<std::size_t>(nblocks),
                                             std::vector<double>(static_cast<std::size_t>(n), 0.0));

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(nblocks); ++blk) {
        std::vector<double>& acc = partial[static_cast<std::size_t>(blk)];
        std::array<int, 64> union_order{};
        std::array<int, 64> within{};
        std::array<int, 64> perm{};
        const std::uint64_t lo = static_cast<std::uint64_t>(blk) * kOwenBlock;
        const std::uint64_t hi = std::min(total, lo + kOwenBlock);
        for (std::uint64_t t = lo; t < hi; ++t) {
            const std::uint64_t union_rank = t / inner_total;
            std::uint64_t rest = t % inner_total;
            unrank_permutation(union_rank, m, union_ids.data(), union_order.data());
            int pos = 0;
            for (int slot = 0; slot < m; ++slot) {
                const int u = union_order[static_cast<std::size_t>(slot)];
                const int p = partition.union_size(u);
                // within-union ranks are keyed by the original union index so
                // the mixed-radix decode does not depend on the union order
                std::uint64_t r = rest;
                for (int k = 0; k < u; ++k) r /= factorial(partition.union_size(k));
                r %= factorial(p);
                unrank_permutation(r, p, members[static_cast<std::size_t>(u)].data(), within.data());
                for (int j = 0; j < p; ++j) perm[static_cast<std::size_t>(pos++)] = within[static_cast<std::size_t>(j)];
            }
            Coalition prefix;
            double vprev = 0.0;
            for (int k = 0; k < n; ++k) {
                const int player = perm[static_cast<std::size_t>(k)];
                prefix = prefix.with(player);
                const double vcur = game.value(prefix);
                acc[static_cast<std::size_t>(player)] += vcur - vprev;
                vprev = vcur;
            }
        }
    }

    AllocationVector out(static_cast<std::size_t>(n), 0.0);
    for (std::uint64_t blk = 0; blk < nblocks; ++blk)
        for (int i = 0; i < n; ++i)
            out[static_cast<std::size_t>(i)] += partial[static_cast<std::size_t>(blk)][static_cast<std::size_t>(i)];
    for (double& x : out) x /= static_cast<double>(total);
    return out;
}

AllocationVector exact_banzhaf_owen(const GameSpec& game, const PartitionStructure& partition) {
    const int n = game.network().size();
    const int m = partition.union_count();
    if (n > kSubsetCap)
        throw CapacityError("exact_banzhaf_owen: n = " + std::to_string(n) +
                            " exceeds the cap of " + std::to_string(kSubsetCap));
    AllocationVector out(static_cast<std::size_t>(n), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        const int own = partition.union_of(i);
        const int p_i = partition.union_size(own);
        std::vector<Coalition> foreign;
        foreign.reserve(static_cast<std::size_t>(m - 1));
        for (int u = 0; u < m; ++u)
            if (u != own) foreign.push_back(partition.union_mask(u));
        const std::uint64_t own_others = partition.union_mask(own).without(i).bits();

        double acc = 0.0;
        const std::uint64_t rmax = std::uint64_t{1} << foreign.size();
        for (std::uint64_t rbits = 0; rbits < rmax; ++rbits) {
            Coalition base;
            for (std::uint64_t b = rbits; b != 0; b &= b - 1)
                base = base | foreign[static_cast<std::size_t>(std::countr_zero(b))];
            for_each_submask(own_others, [&](std::uint64_t sub) {
                const Coalition S = base | Coalition{sub};
                acc += game.value(S.with(i)) - game.value(S);
            });
        }
        out[static_cast<std::size_t>(i)] = std::ldexp(acc, -(m - 1) - (p_i - 1));
    }
    return out;
}

} // namespace gtcent
