#include "gtcent/fixtures.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "gtcent/errors.hpp"
#include "gtcent/rng.hpp"

namespace gtcent::fixtures {

namespace {

constexpr int kMembers = 47;
constexpr std::uint64_t kGenSeed = 0x5a45524b414e4937ULL;

// (final weight = paper-style category weight + 1)
const std::vector<std::pair<std::string, double>>& relation_entries() {
    static const std::vector<std::pair<std::string, double>> entries = {
        {"Associate of", 3},
        {"Brother of", 2},
        {"Commander of", 3},
        {"Family relationship", 2},
        {"Funded", 2},
        {"Lived with", 3},
        {"Nephew of", 2},
        {"Recruiter of", 2},
        {"Supporter of", 2},
        {"Traveled to Syria with", 3},
        {"Traveled with", 3},
        {"Associate and traveled with", 5},
        {"Traveled and lived with", 5},
    };
    return entries;
}

std::string member_label(int i) { // 1-based
    char buf[16];
    std::snprintf(buf, sizeof buf, "member_%02d", i);
    return buf;
}

struct SyntheticRows {
    std::vector<std::pair<std::string, double>> nodes;
    std::vector<std::tuple<std::string, std::string, std::string>> edges; // a, b, relation
    std::vector<int> union_of; // 0-based, aligned with nodes
};

const SyntheticRows& synthetic_rows() {
    static const SyntheticRows rows = [] {
        SyntheticRows r;
        // five heavier members mirror the weight profile 4,4,5,3,2 over a
        // baseline of 1; total node weight 60
        for (int i = 1; i <= kMembers; ++i) {
            double w = 1.0;
            if (i == 1 || i == 2) w = 4.0;
            if (i == 3) w = 5.0;
            if (i == 31) w = 3.0;
            if (i == 35) w = 2.0;
            r.nodes.emplace_back(member_label(i), w);
        }

        const int block_sizes[10] = {3, 12, 7, 4, 4, 4, 7, 2, 2, 2};
        int next = 0;
        for (int u = 0; u < 10; ++u)
            for (int k = 0; k < block_sizes[u]; ++k, ++next) r.union_of.push_back(u);

        const auto& vocab = relation_entries();
        const int hubs[5] = {1, 2, 3, 31, 35};
        std::set<std::pair<int, int>> seen;
        std::uint64_t state = kGenSeed;
        auto draw = [&state] { return (state = rng::mix64(state)); };
        auto add_edge = [&](int a, int b, const std::string& relation) {
            if (a == b) return;
            if (a > b) std::swap(a, b);
            if (!seen.insert({a, b}).second) return;
            r.edges.emplace_back(member_label(a), member_label(b), relation);
        };

        add_edge(1, 3, "Associate and traveled with"); // guarantees a weight-5 edge
        for (int i = 2; i <= kMembers; ++i) {
            const std::uint64_t h = draw();
            int target = (h % 3 == 0) ? hubs[(h >> 8) % 5]
                                      : 1 + static_cast<int>((h >> 8) % static_cast<std::uint64_t>(i - 1));
            if (target == i) target = i - 1;
            add_edge(i, target, vocab[(h >> 40) % vocab.size()].first);
        }
        for (int t = 0; t < 90; ++t) {
            const std::uint64_t h = draw();
            const int a = 1 + static_cast<int>(h % kMembers);
            const int b = 1 + static_cast<int>((h >> 16) % kMembers);
            add_edge(a, b, vocab[(h >> 40) % vocab.size()].first);
        }
        return r;
    }();
    return rows;
}

} // namespace

WeightedNetwork tri_network() {
    return WeightedNetwork::build({{"a", 1.0}, {"b", 2.0}, {"c", 1.0}},
                                  {{"a", "b", 2.0}, {"b", "c", 3.0}});
}

PartitionStructure tri_partition(const WeightedNetwork& net) {
    std::vector<int> union_of(static_cast<std::size_t>(net.size()), 0);
    union_of[static_cast<std::size_t>(*net.index_of("c"))] = 1;
    return PartitionStructure::build(union_of);
}

RelationMap default_relation_map() {
    RelationMap map;
    for (const auto& [name, weight] : relation_entries()) map.set(name, weight);
    return map;
}

WeightedNetwork synthetic47_network() {
    const SyntheticRows& rows = synthetic_rows();
    const RelationMap map = default_relation_map();
    std::vector<std::tuple<std::string, std::string, double>> edges;
    edges.reserve(rows.edges.size());
    for (const auto& [a, b, relation] : rows.edges) edges.emplace_back(a, b, map.at(relation));
    return WeightedNetwork::build(rows.nodes, edges);
}

PartitionStructure synthetic47_partition(const WeightedNetwork& net) {
    (void)net;
    return PartitionStructure::build(synthetic_rows().union_of);
}

std::vector<std::string> write_fixture_files(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<std::string> written;
    auto open = [&](const std::string& name) {
        const std::string path = (fs::path(dir) / name).string();
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ValidationError("cannot write '" + path + "'");
        written.push_back(path);
        return out;
    };

    {
        std::ofstream out = open("tri_nodes.csv");
        out << "label,weight\na,1\nb,2\nc,1\n";
    }
    {
        std::ofstream out = open("tri_edges.csv");
        out << "source,target,weight\na,b,2\nb,c,3\n";
    }
    {
        std::ofstream out = open("tri_partition.txt");
        out << "a = 1\nb = 1\nc = 2\n";
    }

    const SyntheticRows& rows = synthetic_rows();
    {
        std::ofstream out = open("z47_nodes.csv");
        out << "label,weight\n";
        for (const auto& [label, weight] : rows.nodes) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", weight);
            out << label << ',' << buf << '\n';
        }
    }
    {
        std::ofstream out = open("z47_edges.csv");
        out << "source,target,relationship\n";
        for (const auto& [a, b, relation] : rows.edges) out << a << ',' << b << ',' << relation << '\n';
    }
    {
        std::ofstream out = open("z47_relations.map");
        for (const auto& [name, weight] : relation_entries()) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", weight);
            out << name << " = " << buf << '\n';
        }
    }
    {
        std::ofstream out = open("z47_partition.txt");
        for (int i = 0; i < kMembers; ++i)
            out << member_label(i + 1) << " = " << rows.union_of[static_cast<std::size_t>(i)] + 1 << '\n';
    }
    return written;
}

} // namespace gtcent::fixtures
