// Benchmark of the OpenMP estimator kernels against the serial reference on
// the 47-member synthetic fixture. Also cross-checks that both paths agree
// bit for bit.

#include <cstdio>
#include <cstring>

#include "gtcent/fixtures.hpp"
#include "gtcent/parallel.hpp"
#include "gtcent/sampling.hpp"
#include "gtcent/sampling_serial.hpp"

using namespace gtcent;

namespace {

bool identical(const AllocationVector& a, const AllocationVector& b) {
    if (a.size() != b.size()) return false;
    return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct Case {
    const char* name;
    AllocationEstimate (*parallel)(const GameSpec&, const PartitionStructure&, const EstimatorConfig&);
    AllocationEstimate (*serial)(const GameSpec&, const PartitionStructure&, const EstimatorConfig&);
};

AllocationEstimate par_banzhaf(const GameSpec& g, const PartitionStructure&, const EstimatorConfig& c) {
    return estimate_banzhaf(g, c);
}
AllocationEstimate ser_banzhaf(const GameSpec& g, const PartitionStructure&, const EstimatorConfig& c) {
    return serial::estimate_banzhaf(g, c);
}
AllocationEstimate par_shapley(const GameSpec& g, const PartitionStructure&, const EstimatorConfig& c) {
    return estimate_shapley(g, c);
}
AllocationEstimate ser_shapley(const GameSpec& g, const PartitionStructure&, const EstimatorConfig& c) {
    return serial::estimate_shapley(g, c);
}
AllocationEstimate par_owen(const GameSpec& g, const PartitionStructure& p, const EstimatorConfig& c) {
    return estimate_owen(g, p, c);
}
AllocationEstimate ser_owen(const GameSpec& g, const PartitionStructure& p, const EstimatorConfig& c) {
    return serial::estimate_owen(g, p, c);
}
AllocationEstimate par_bzo(const GameSpec& g, const PartitionStructure& p, const EstimatorConfig& c) {
    return estimate_banzhaf_owen(g, p, c);
}
AllocationEstimate ser_bzo(const GameSpec& g, const PartitionStructure& p, const EstimatorConfig& c) {
    return serial::estimate_banzhaf_owen(g, p, c);
}

} // namespace

int main(int argc, char** argv) {
    std::uint64_t ell = 4000;
    if (argc > 1) ell = std::strtoull(argv[1], nullptr, 10);

    const WeightedNetwork net = fixtures::synthetic47_network();
    const PartitionStructure partition = fixtures::synthetic47_partition(net);
    const GameSpec game(net, GameKind::Mwconn);

    EstimatorConfig banzhaf{EstimatorMethod::BanzhafSimple, ell, 0, 0, 1};
    EstimatorConfig shapley{EstimatorMethod::ShapleyPermutation, ell, 0, 0, 1};
    EstimatorConfig owen{EstimatorMethod::OwenCompatiblePermutation, ell, 0, 0, 1};
    EstimatorConfig bzo{EstimatorMethod::BanzhafOwenTwoStage, 0, ell / 10, 10, 1};

    const Case cases[] = {
        {"banzhaf", par_banzhaf, ser_banzhaf},
        {"banzhaf-owen", par_bzo, ser_bzo},
        {"shapley", par_shapley, ser_shapley},
        {"owen", par_owen, ser_owen},
    };
    const EstimatorConfig* configs[] = {&banzhaf, &bzo, &shapley, &owen};

    std::printf("n=%d, edges=%zu, threads=%d, ell=%llu\n", net.size(), net.edges().size(),
                omp_get_max_threads(), static_cast<unsigned long long>(ell));
    std::printf("%-14s %12s %12s %9s %6s\n", "method", "serial [s]", "parallel [s]", "speedup",
                "match");
    int mismatches = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        const AllocationEstimate s = cases[i].serial(game, partition, *configs[i]);
        const AllocationEstimate p = cases[i].parallel(game, partition, *configs[i]);
        const bool ok = identical(s.values, p.values);
        mismatches += ok ? 0 : 1;
        std::printf("%-14s %12.3f %12.3f %8.2fx %6s\n", cases[i].name, s.wall_seconds,
                    p.wall_seconds, s.wall_seconds / p.wall_seconds, ok ? "yes" : "NO");
    }
    return mismatches;
}
