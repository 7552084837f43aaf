#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gtcent/errors.hpp"
#include "gtcent/io.hpp"
#include "gtcent/reporting.hpp"

using namespace gtcent;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("rank orders by non-increasing allocation") {
    const RankingTable table = rank({2.0, 6.5, 3.5}, {"a", "b", "c"});
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[0].label == "b");
    CHECK(table.rows[1].label == "c");
    CHECK(table.rows[2].label == "a");
    CHECK(table.rows[0].position == 1);
    CHECK(table.rows[2].position == 3);
}

TEST_CASE("ties break by ascending label with consecutive positions") {
    const RankingTable table = rank({1.0, 1.0, 1.0}, {"a", "b", "c"});
    CHECK(table.rows[0].label == "a");
    CHECK(table.rows[1].label == "b");
    CHECK(table.rows[2].label == "c");
    CHECK(table.rows[1].position == 2);
}

TEST_CASE("rank is invariant under positive scaling") {
    std::mt19937_64 eng(5);
    for (int trial = 0; trial < 20; ++trial) {
        AllocationVector alloc(8);
        std::vector<std::string> labels;
        for (int i = 0; i < 8; ++i) {
            alloc[static_cast<std::size_t>(i)] = static_cast<double>(eng() % 1000) / 7.0;
            labels.push_back("n" + std::to_string(i));
        }
        const double scale = 0.25 + static_cast<double>(eng() % 100);
        AllocationVector scaled = alloc;
        for (double& x : scaled) x *= scale;
        const RankingTable a = rank(alloc, labels), b = rank(scaled, labels);
        for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].label == b.rows[i].label);
    }
    CHECK_THROWS_AS(rank({1.0}, {"a", "b"}), ValidationError);
}

TEST_CASE("summarize computes order statistics and CV") {
    SUBCASE("identical replicates collapse") {
        const ReplicationSummary s = summarize({{3.0, 1.0}, {3.0, 1.0}, {3.0, 1.0}});
        CHECK(s.per_player[0].min == 3.0);
        CHECK(s.per_player[0].max == 3.0);
        CHECK(s.per_player[0].mean == 3.0);
        CHECK(s.per_player[0].cv == 0.0);
    }
    SUBCASE("two replicates") {
        const ReplicationSummary s = summarize({{0.0}, {2.0}});
        CHECK(s.per_player[0].mean == 1.0);
        CHECK(s.per_player[0].cv == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        CHECK(s.per_player[0].q1 == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(s.per_player[0].median == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.per_player[0].q3 == doctest::Approx(1.5).epsilon(1e-12));
    }
    SUBCASE("mean field matches the per-player mean") {
        std::mt19937_64 eng(9);
        std::vector<AllocationVector> reps;
        for (int r = 0; r < 25; ++r) {
            AllocationVector v(4);
            for (double& x : v) x = static_cast<double>(eng() % 997) / 13.0;
            reps.push_back(v);
        }
        const ReplicationSummary s = summarize(reps);
        for (std::size_t i = 0; i < 4; ++i) {
            double sum = 0.0;
            for (const auto& v : reps) sum += v[i];
            CHECK(std::abs(s.per_player[i].mean - sum / 25.0) <= 1e-12);
            CHECK(s.per_player[i].min <= s.per_player[i].q1);
            CHECK(s.per_player[i].q1 <= s.per_player[i].median);
            CHECK(s.per_player[i].median <= s.per_player[i].q3);
            CHECK(s.per_player[i].q3 <= s.per_player[i].max);
        }
    }
    SUBCASE("fewer than two replicates is an error") {
        CHECK_THROWS_AS(summarize({{1.0}}), ValidationError);
    }
}

TEST_CASE("lorenz curve") {
    SUBCASE("equal allocations give the diagonal") {
        const LorenzCurve curve = lorenz({2.0, 2.0, 2.0, 2.0});
        for (std::size_t k = 0; k < curve.u.size(); ++k)
            CHECK(curve.L[k] == doctest::Approx(curve.u[k]).epsilon(1e-12));
    }
    SUBCASE("extreme inequality") {
        const LorenzCurve curve = lorenz({0.0, 0.0, 1.0});
        REQUIRE(curve.u.size() == 4);
        CHECK(curve.L[0] == 0.0);
        CHECK(curve.L[1] == 0.0);
        CHECK(curve.L[2] == 0.0);
        CHECK(curve.L[3] == 1.0);
        CHECK(curve.u[1] == doctest::Approx(1.0 / 3.0));
    }
    SUBCASE("TRI shapley allocation") {
        const LorenzCurve curve = lorenz({2.0, 6.5, 3.5});
        CHECK(curve.L[1] == doctest::Approx(2.0 / 12.0).epsilon(1e-12));
        CHECK(curve.L[2] == doctest::Approx(5.5 / 12.0).epsilon(1e-12));
        CHECK(curve.L[3] == 1.0);
    }
    SUBCASE("curve invariants on random allocations") {
        std::mt19937_64 eng(31);
        for (int trial = 0; trial < 30; ++trial) {
            AllocationVector v(1 + eng() % 12);
            for (double& x : v) x = static_cast<double>(eng() % 1000) / 9.0;
            v[0] += 0.001; // not all zero
            const LorenzCurve curve = lorenz(v);
            CHECK(curve.u.front() == 0.0);
            CHECK(curve.L.front() == 0.0);
            CHECK(curve.u.back() == 1.0);
            CHECK(curve.L.back() == 1.0);
            for (std::size_t k = 1; k < curve.u.size(); ++k) {
                CHECK(curve.u[k] >= curve.u[k - 1]);
                CHECK(curve.L[k] >= curve.L[k - 1] - 1e-15);
                CHECK(curve.L[k] <= curve.u[k] + 1e-12); // below the diagonal
            }
            // convexity: increments are non-decreasing
            for (std::size_t k = 2; k < curve.L.size(); ++k)
                CHECK(curve.L[k] - curve.L[k - 1] >= curve.L[k - 1] - curve.L[k - 2] - 1e-12);
        }
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(lorenz({1.0, -0.5}), ValidationError);
        CHECK_THROWS_AS(lorenz({0.0, 0.0}), ValidationError);
        CHECK_THROWS_AS(lorenz({}), ValidationError);
    }
}

TEST_CASE("ranking comparison") {
    const std::vector<std::string> labels{"a", "b", "c"};
    const RankingTable fwd = rank({3.0, 2.0, 1.0}, labels);
    SUBCASE("identical tables") {
        const RankingComparison cmp = compare_rankings(fwd, fwd, 3);
        CHECK(cmp.overlap == 3);
        for (const auto& d : cmp.deltas) CHECK(d.delta == 0);
        CHECK(cmp.entering.empty());
        CHECK(cmp.leaving.empty());
    }
    SUBCASE("reversed order") {
        const RankingTable rev = rank({1.0, 2.0, 3.0}, labels);
        const RankingComparison cmp = compare_rankings(fwd, rev, 3);
        CHECK(cmp.overlap == 3);
        CHECK(cmp.deltas[0].delta == 2);
        CHECK(cmp.deltas[1].delta == 0);
        CHECK(cmp.deltas[2].delta == -2);
    }
    SUBCASE("entering and leaving the top-k") {
        const RankingTable other = rank({1.0, 2.0, 3.0}, labels);
        const RankingComparison cmp = compare_rankings(fwd, other, 1);
        CHECK(cmp.overlap == 0);
        REQUIRE(cmp.leaving.size() == 1);
        REQUIRE(cmp.entering.size() == 1);
        CHECK(cmp.leaving[0] == "a");
        CHECK(cmp.entering[0] == "c");
    }
    SUBCASE("label mismatch") {
        const RankingTable other = rank({1.0, 2.0, 3.0}, {"a", "b", "z"});
        CHECK_THROWS_AS(compare_rankings(fwd, other, 2), ValidationError);
    }
}

TEST_CASE("ranking file format matches the golden example") {
    RankingTable table;
    table.rows.push_back({1, "Abdelhamid Abaaoud", 38.326053});
    table.rows.push_back({2, "Salah Abdeslam", 35.073561});
    table.rows.push_back({3, "Khalid Zerkani", 33.930235});
    const std::string path = temp_path("gtcent_golden_ranking.csv");
    io::write_ranking_file(path, table, {});
    CHECK(slurp(path) == slurp(std::string(GTCENT_GOLDEN_DIR) + "/top3_ranking_format.csv"));
    std::remove(path.c_str());
}

TEST_CASE("summary file carries the reference column set at 6 decimals") {
    // column set and precision mirror the published summary tables
    const ReplicationSummary s = summarize({{38.326}, {38.326}});
    const std::string path = temp_path("gtcent_summary_format.csv");
    io::write_summary_file(path, {"Abdelhamid Abaaoud"}, s, {});
    const std::string text = slurp(path);
    CHECK(text.find("label,min,q1,median,mean,q3,max,cv") != std::string::npos);
    CHECK(text.find("38.326000") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("allocation files round-trip at full precision") {
    const std::string path = temp_path("gtcent_alloc_roundtrip.csv");
    const AllocationVector values{2.0 / 3.0, 6.5, 1e-7};
    io::write_allocation_file(path, {"a", "b", "c"}, values, {{"method", "banzhaf"}});
    const io::AllocationFile file = io::read_allocation_file(path);
    REQUIRE(file.values.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(file.values[i] == values[i]);
    CHECK(file.labels == std::vector<std::string>{"a", "b", "c"});
    bool has_method = false;
    for (const auto& [k, v] : file.meta) has_method |= (k == "method" && v == "banzhaf");
    CHECK(has_method);
    std::remove(path.c_str());
}
