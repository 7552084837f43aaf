#include "gtcent/reporting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "gtcent/errors.hpp"

namespace gtcent {

RankingTable rank(const AllocationVector& alloc, const std::vector<std::string>& labels) {
    if (alloc.size() != labels.size())
        throw ValidationError("rank: allocation and label counts differ");
    RankingTable table;
    table.rows.reserve(alloc.size());
    for (std::size_t i = 0; i < alloc.size(); ++i)
        table.rows.push_back(RankingRow{0, labels[i], alloc[i]});
    std::sort(table.rows.begin(), table.rows.end(), [](const RankingRow& x, const RankingRow& y) {
        if (x.allocation != y.allocation) return x.allocation > y.allocation;
        return x.label < y.label;
    });
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        table.rows[i].position = static_cast<int>(i) + 1;
    return table;
}

namespace {

// linear-interpolation quantile over a sorted sample
double quantile_sorted(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    const double h = p * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

} // namespace

ReplicationSummary summarize(const std::vector<AllocationVector>& replicates) {
    if (replicates.size() < 2)
        throw ValidationError("summarize requires at least 2 replicates");
    const std::size_t n = replicates.front().size();
    for (const AllocationVector& r : replicates)
        if (r.size() != n) throw ValidationError("summarize: replicate lengths differ");

    const double reps = static_cast<double>(replicates.size());
    ReplicationSummary out;
    out.per_player.resize(n);
    std::vector<double> sample(replicates.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < replicates.size(); ++r) sample[r] = replicates[r][i];
        std::sort(sample.begin(), sample.end());
        PlayerSummary& s = out.per_player[i];
        s.min = sample.front();
        s.max = sample.back();
        s.q1 = quantile_sorted(sample, 0.25);
        s.median = quantile_sorted(sample, 0.5);
        s.q3 = quantile_sorted(sample, 0.75);
        s.mean = std::accumulate(sample.begin(), sample.end(), 0.0) / reps;
        double ss = 0.0;
        for (const double x : sample) ss += (x - s.mean) * (x - s.mean);
        const double sd = std::sqrt(ss / (reps - 1.0));
        s.cv = s.mean != 0.0 ? sd / s.mean : (sd == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN());
    }
    return out;
}

LorenzCurve lorenz(const AllocationVector& alloc) {
    if (alloc.empty()) throw ValidationError("lorenz: empty allocation");
    double total = 0.0;
    for (const double x : alloc) {
        if (x < 0.0) throw ValidationError("lorenz: negative allocation entry");
        total += x;
    }
    if (total <= 0.0) throw ValidationError("lorenz: allocation sums to zero");

    AllocationVector sorted = alloc;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    LorenzCurve curve;
    curve.u.resize(n + 1);
    curve.L.resize(n + 1);
    curve.u[0] = 0.0;
    curve.L[0] = 0.0;
    double prefix = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        prefix += sorted[k - 1];
        curve.u[k] = static_cast<double>(k) / static_cast<double>(n);
        curve.L[k] = prefix / total;
    }
    curve.L[n] = 1.0;
    return curve;
}

RankingComparison compare_rankings(const RankingTable& a, const RankingTable& b, int k) {
    std::map<std::string, int> pos_a, pos_b;
    for (const RankingRow& row : a.rows) pos_a[row.label] = row.position;
    for (const RankingRow& row : b.rows) pos_b[row.label] = row.position;
    if (pos_a.size() != a.rows.size() || pos_b.size() != b.rows.size())
        throw ValidationError("compare_rankings: duplicate labels in a ranking");
    if (pos_a.size() != pos_b.size())
        throw ValidationError("compare_rankings: label sets differ");
    for (const auto& [label, _] : pos_a)
        if (!pos_b.count(label))
            throw ValidationError("compare_rankings: label '" + label + "' missing from second ranking");

    RankingComparison cmp;
    cmp.k = std::min<int>(k, static_cast<int>(a.rows.size()));
    for (const RankingRow& row : a.rows) {
        const int pb = pos_b.at(row.label);
        const bool in_a = row.position <= cmp.k;
        const bool in_b = pb <= cmp.k;
        if (in_a && in_b) ++cmp.overlap;
        if (in_a && !in_b) cmp.leaving.push_back(row.label);
        if (!in_a && in_b) cmp.entering.push_back(row.label);
        cmp.deltas.push_back(RankingComparison::Delta{row.label, row.position, pb, pb - row.position});
    }
    return cmp;
}

} // namespace gtcent
