// Acceptance suite: runs every formal criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "gtcent/exact.hpp"
#include "gtcent/fixtures.hpp"
#include "gtcent/io.hpp"
#include "gtcent/reporting.hpp"
#include "gtcent/sampling.hpp"

#include "support/oracle.hpp"
#include "support/random_fixture.hpp"

using namespace gtcent;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int num, const char* name, bool pass, const std::string& detail = "") {
    std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", num, name,
                detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool close_abs(const AllocationVector& a, const AllocationVector& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

std::string fmt(const char* spec, double x) {
    char buf[128];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

EstimatorConfig cfg(EstimatorMethod method, std::uint64_t ell, std::uint64_t ell_r,
                    std::uint64_t ell_s) {
    return EstimatorConfig{method, ell, ell_r, ell_s, 0};
}

const std::string& scratch_dir() {
    static const std::string dir = [] {
        const fs::path d =
            fs::temp_directory_path() / ("gtcent_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d.string();
    }();
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(GTCENT_CLI_BIN) + " " + args + " > " + scratch_dir() +
                            "/cli_output.txt 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---- criteria -------------------------------------------------------------

void criterion_1_and_2() {
    const auto start = std::chrono::steady_clock::now();
    bool identity_ok = true, efficiency_ok = true;
    std::string detail;

    const auto check_fixture = [&](const WeightedNetwork& net, GameKind kind) {
        const int n = net.size();
        const GameSpec game(net, kind);
        const AllocationVector sh = exact_shapley(game);
        const AllocationVector bz = exact_banzhaf(game);
        for (const auto& partition :
             {PartitionStructure::singletons(n), PartitionStructure::grand(n)}) {
            identity_ok &= close_abs(exact_owen(game, partition), sh, 1e-12);
            identity_ok &= close_abs(exact_banzhaf_owen(game, partition), bz, 1e-12);
            const AllocationVector ow = exact_owen(game, partition);
            const double grand = game.value(net.all());
            const double ow_sum = std::accumulate(ow.begin(), ow.end(), 0.0);
            efficiency_ok &= std::abs(ow_sum - grand) <= 1e-9 * std::max(1.0, std::abs(grand));
        }
        const double grand = game.value(net.all());
        const double sh_sum = std::accumulate(sh.begin(), sh.end(), 0.0);
        efficiency_ok &= std::abs(sh_sum - grand) <= 1e-9 * std::max(1.0, std::abs(grand));
    };

    check_fixture(fixtures::tri_network(), GameKind::Mwconn);
    check_fixture(fixtures::tri_network(), GameKind::Awconn);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const int n = 3 + static_cast<int>(seed % 7); // 3..9
        const auto fx = testsupport::random_fixture(seed, n, 5.0, 0.0, 5.0, 0.4);
        check_fixture(testsupport::to_network(fx),
                      seed % 2 == 0 ? GameKind::Mwconn : GameKind::Awconn);
    }
    const double elapsed = seconds_since(start);
    report(1, "owen/shapley and banzhaf-owen/banzhaf coincide under trivial partitions",
           identity_ok && elapsed < 10.0, fmt("%.1f s", elapsed));
    report(2, "shapley and owen are efficient to 1e-9 relative", efficiency_ok);
}

void criterion_3() {
    const WeightedNetwork net = fixtures::tri_network();
    const PartitionStructure partition = fixtures::tri_partition(net);
    const GameSpec game(net, GameKind::Mwconn);
    const AllocationVector golden{2.0, 6.5, 3.5};

    const oracle::Game og{{1.0, 2.0, 1.0}, {{0, 1}, {1, 2}}, {2.0, 3.0}, false};
    bool ok = close_abs(oracle::shapley(og), golden, 1e-12) &&
              close_abs(oracle::banzhaf(og), golden, 1e-12) &&
              close_abs(oracle::owen(og, {0, 0, 1}), golden, 1e-12) &&
              close_abs(oracle::banzhaf_owen(og, {0, 0, 1}), golden, 1e-12);
    ok &= close_abs(exact_shapley(game), golden, 1e-12);
    ok &= close_abs(exact_banzhaf(game), golden, 1e-12);
    ok &= close_abs(exact_owen(game, partition), golden, 1e-12);
    ok &= close_abs(exact_banzhaf_owen(game, partition), golden, 1e-12);
    report(3, "TRI golden values (2, 6.5, 3.5) across all four exact values", ok);
}

void criterion_4() {
    const auto start = std::chrono::steady_clock::now();
    const WeightedNetwork net = fixtures::tri_network();
    const PartitionStructure partition = fixtures::tri_partition(net);
    const GameSpec game(net, GameKind::Mwconn);
    const int n = net.size();
    const int runs = 30;

    const AllocationVector exact_sh = exact_shapley(game);
    const AllocationVector exact_bz = exact_banzhaf(game);
    const AllocationVector exact_ow = exact_owen(game, partition);
    const AllocationVector exact_bo = exact_banzhaf_owen(game, partition);

    struct Plan {
        const char* name;
        EstimatorConfig config;
        const AllocationVector* target;
        bool needs_partition;
    };
    const Plan plans[] = {
        {"banzhaf", cfg(EstimatorMethod::BanzhafSimple, 100000, 0, 0), &exact_bz, false},
        {"shapley", cfg(EstimatorMethod::ShapleyPermutation, 100000, 0, 0), &exact_sh, false},
        {"owen", cfg(EstimatorMethod::OwenCompatiblePermutation, 100000, 0, 0), &exact_ow, true},
        {"banzhaf-owen", cfg(EstimatorMethod::BanzhafOwenTwoStage, 0, 316, 316), &exact_bo, true},
    };

    bool ok = true;
    std::string detail;
    std::uint64_t master = 1000;
    for (const Plan& plan : plans) {
        const ReplicationResult result = replicate(
            game, plan.needs_partition ? &partition : nullptr, plan.config, runs, master++);
        std::vector<double> se(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) {
            double mean = 0.0;
            for (const auto& est : result.replicates) mean += est.values[static_cast<std::size_t>(i)];
            mean /= runs;
            double ss = 0.0;
            for (const auto& est : result.replicates) {
                const double d = est.values[static_cast<std::size_t>(i)] - mean;
                ss += d * d;
            }
            se[static_cast<std::size_t>(i)] = std::sqrt(ss / (runs - 1));
        }
        int hits = 0;
        for (const auto& est : result.replicates) {
            bool all_in = true;
            for (int i = 0; i < n; ++i) {
                const double diff = std::abs(est.values[static_cast<std::size_t>(i)] -
                                             (*plan.target)[static_cast<std::size_t>(i)]);
                const double window = 3.0 * se[static_cast<std::size_t>(i)];
                all_in &= (window == 0.0) ? diff == 0.0 : diff <= window;
            }
            hits += all_in ? 1 : 0;
        }
        detail += std::string(plan.name) + ":" + std::to_string(hits) + "/30 ";
        ok &= hits >= 28;
    }
    const double elapsed = seconds_since(start);
    ok &= elapsed < 120.0;
    report(4, "every estimator lands within 3 empirical SE in >= 28/30 runs",
           ok, detail + fmt("(%.1f s)", elapsed));
}

void criterion_5() {
    const auto fx = testsupport::random_fixture(55, 10, 0.8, 1.0, 1.8, 0.4);
    const WeightedNetwork net = testsupport::to_network(fx);
    const GameSpec game(net, GameKind::Mwconn);
    const double eps = 0.5, alpha = 0.1;
    const double r = contribution_range_bound(net);
    const std::uint64_t ell = banzhaf_sample_size({eps, alpha, r});
    const AllocationVector exact = exact_banzhaf(game);
    const int reps = 500;

    const ReplicationResult result = replicate(
        game, nullptr, cfg(EstimatorMethod::BanzhafSimple, ell, 0, 0), reps, 808);
    bool ok = ell <= 512; // the derived ell must be attainable under the 2^{n-1} cap
    double worst = 0.0;
    for (int i = 0; i < net.size(); ++i) {
        int violations = 0;
        for (const auto& est : result.replicates)
            if (std::abs(est.values[static_cast<std::size_t>(i)] -
                         exact[static_cast<std::size_t>(i)]) > eps)
                ++violations;
        const double frac = static_cast<double>(violations) / reps;
        worst = std::max(worst, frac);
        ok &= frac <= alpha + 0.04;
    }
    report(5, "hoeffding coverage on a random n=10 fixture",
           ok, "ell=" + std::to_string(ell) + fmt(", worst violation rate %.3f", worst));
}

void criterion_6() {
    const double r_table = std::sqrt(1200.0); // the table-consistent range reading
    const double cells[2][3] = {{1.34069, 1.48773, 1.78297}, {0.04240, 0.04705, 0.05638}};
    const std::uint64_t ells[2] = {1000, 1000000};
    const double alphas[3] = {0.1, 0.05, 0.01};
    bool ok = true;
    for (int row = 0; row < 2; ++row)
        for (int col = 0; col < 3; ++col)
            ok &= std::abs(banzhaf_error_bound(ells[row], alphas[col], r_table) - cells[row][col]) <
                  0.5e-5;
    // the two published range readings disagree; both are reported
    const double eps_r300 = banzhaf_error_bound(1000, 0.1, 300.0);
    ok &= std::abs(eps_r300 - 11.611) < 1e-3;
    report(6, "error-bound table reproduced with r^2=1200 to 5 decimals", ok,
           fmt("r=300 reading gives epsilon=%.3f at ell=1e3, alpha=0.1 ", eps_r300) +
               "(documented discrepancy between the two range conventions)");
}

void criterion_7() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;

    const WeightedNetwork big = fixtures::synthetic47_network();
    const double big_bound = contribution_range_bound(big);
    const GameSpec mw(big, GameKind::Mwconn);
    const GameSpec aw(big, GameKind::Awconn);
    std::mt19937_64 eng(4711);
    for (int trial = 0; trial < 50000; ++trial) {
        const int i = static_cast<int>(eng() % 47);
        const Coalition S{eng() & big.all().without(i).bits()};
        const double xm = mw.marginal(i, S);
        const double xa = aw.marginal(i, S);
        ok &= xm >= 0.0 && xm <= big_bound && xa >= 0.0 && xa <= big_bound;
    }

    const auto exhaustive = [&ok](const WeightedNetwork& net) {
        const double bound = contribution_range_bound(net);
        for (const GameKind kind : {GameKind::Mwconn, GameKind::Awconn}) {
            const GameSpec game(net, kind);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << net.size()); ++mask)
                for (int i = 0; i < net.size(); ++i) {
                    if ((mask >> i) & 1) continue;
                    const double x = game.marginal(i, Coalition{mask});
                    ok &= x >= 0.0 && x <= bound;
                }
        }
    };
    exhaustive(fixtures::tri_network());
    exhaustive(testsupport::to_network(testsupport::random_fixture(2, 12, 5.0, 1.0, 5.0, 0.3)));

    const double elapsed = seconds_since(start);
    report(7, "marginal contributions stay within [0, range bound]",
           ok && elapsed < 60.0, fmt("%.1f s", elapsed));
}

void criterion_8() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;

    const auto check = [&](const WeightedNetwork& net, const PartitionStructure& partition,
                           std::uint64_t master) {
        const GameSpec game(net, GameKind::Mwconn);
        const int reps = 10000;
        const ReplicationResult result = replicate(
            game, &partition, cfg(EstimatorMethod::BanzhafOwenTwoStage, 0, 2, 2), reps, master);
        for (int i = 0; i < net.size(); ++i) {
            const VariancePrediction vp =
                bzo_variance_prediction(game, partition, i, 2, 2, VarianceConvention::Population);
            double mean = 0.0;
            for (const auto& est : result.replicates) mean += est.values[static_cast<std::size_t>(i)];
            mean /= reps;
            double ss = 0.0;
            for (const auto& est : result.replicates) {
                const double d = est.values[static_cast<std::size_t>(i)] - mean;
                ss += d * d;
            }
            const double emp = ss / (reps - 1);
            if (vp.predicted_variance == 0.0) {
                ok &= emp == 0.0;
            } else {
                const double rel = std::abs(emp - vp.predicted_variance) / vp.predicted_variance;
                ok &= rel <= 0.10;
            }
        }
    };

    const WeightedNetwork tri = fixtures::tri_network();
    check(tri, fixtures::tri_partition(tri), 31337);
    const auto fx = testsupport::random_fixture(66, 9, 5.0, 1.0, 5.0, 0.4, 3);
    check(testsupport::to_network(fx), testsupport::to_partition(fx), 424243);

    const double elapsed = seconds_since(start);
    report(8, "two-stage variance matches the prediction within 10%",
           ok && elapsed < 120.0, fmt("%.1f s", elapsed));
}

void criterion_9() {
    bool ok = true;
    const auto check = [&ok](const WeightedNetwork& net) {
        const GameSpec mw(net, GameKind::Mwconn);
        const GameSpec aw(net, GameKind::Awconn);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << net.size()); ++mask) {
            const Coalition S{mask};
            const double vm = mw.value(S), va = aw.value(S);
            ok &= va >= vm;
            if (!S.is_empty() && net.is_connected(S)) ok &= va == vm;
        }
    };
    check(fixtures::tri_network());
    check(testsupport::to_network(testsupport::random_fixture(7, 12, 5.0, 0.0, 5.0, 0.3)));
    report(9, "additive game dominates the monotonic game, equal on connected coalitions", ok);
}

void criterion_10() {
    const std::string fx = scratch_dir() + "/fixtures";
    bool ok = run_cli("fixtures --dir " + fx) == 0;
    const std::string base_args = " --nodes " + fx + "/z47_nodes.csv --edges " + fx +
                                  "/z47_edges.csv --relations " + fx + "/z47_relations.map";
    const std::string partition_arg = " --partition " + fx + "/z47_partition.txt";

    const auto byte_identical = [&](const std::string& method, const std::string& extra) {
        std::vector<std::string> alloc;
        for (const int threads : {1, 4, 8}) {
            const std::string out = scratch_dir() + "/det_" + method + "_t" + std::to_string(threads);
            if (run_cli("estimate" + base_args + extra + " --game mwconn --method " + method +
                        " --seed 99 --threads " + std::to_string(threads) + " --out " + out) != 0)
                return false;
            alloc.push_back(slurp(out + ".allocation.csv") + slurp(out + ".ranking.csv"));
        }
        return alloc[0] == alloc[1] && alloc[0] == alloc[2] && !alloc[0].empty();
    };
    ok &= byte_identical("banzhaf", " --ell 2000");
    ok &= byte_identical("owen", " --ell 2000" + partition_arg);
    ok &= byte_identical("banzhaf-owen", " --ell-r 64 --ell-s 8" + partition_arg);
    report(10, "estimate output files are byte-identical at 1, 4, and 8 threads", ok);
}

void criterion_11() {
    // private-data rankings are not reproducible; the output format carries
    // the published column sets and 6-decimal precision instead
    bool ok = true;
    RankingTable top3;
    top3.rows.push_back({1, "Abdelhamid Abaaoud", 38.326053});
    top3.rows.push_back({2, "Salah Abdeslam", 35.073561});
    top3.rows.push_back({3, "Khalid Zerkani", 33.930235});
    const std::string ranking_path = scratch_dir() + "/golden_ranking.csv";
    io::write_ranking_file(ranking_path, top3, {});
    ok &= slurp(ranking_path) == slurp(std::string(GTCENT_GOLDEN_DIR) + "/top3_ranking_format.csv");

    const ReplicationSummary summary = summarize({{38.320}, {38.332}});
    const std::string summary_path = scratch_dir() + "/golden_summary.csv";
    io::write_summary_file(summary_path, {"Abdelhamid Abaaoud"}, summary, {});
    const std::string text = slurp(summary_path);
    ok &= text.find("label,min,q1,median,mean,q3,max,cv") != std::string::npos;
    ok &= text.find("38.326000") != std::string::npos; // mean at 6 decimals
    report(11, "output tables carry the published column sets and precision", ok);
}

void criterion_12() {
    const auto start = std::chrono::steady_clock::now();
    const WeightedNetwork net = fixtures::synthetic47_network();
    const GameSpec game(net, GameKind::Mwconn);
    EstimatorConfig config = cfg(EstimatorMethod::BanzhafSimple, 10000, 0, 0);
    config.seed = 12;
    const AllocationEstimate est = estimate_banzhaf(game, config);
    const double elapsed = seconds_since(start);
    const bool ok = elapsed < 300.0 && est.values.size() == 47;
    report(12, "47-member banzhaf estimation with ell=10^4 per player", ok,
           fmt("%.1f s", elapsed));
}

} // namespace

int main() {
    criterion_1_and_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (g_failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures;
}
