#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gtcent/coalition.hpp"

namespace gtcent {

/// Undirected weighted edge; endpoints stored with a < b.
struct Edge {
    int a = 0;
    int b = 0;
    double weight = 0.0;
};

/// Maps relationship names to final edge weights.
class RelationMap {
public:
    RelationMap() = default;

    void set(const std::string& name, double weight);
    bool contains(const std::string& name) const { return weights_.count(name) != 0; }
    /// Throws ValidationError for an unknown relationship name.
    double at(const std::string& name) const;
    std::size_t size() const { return weights_.size(); }
    const std::map<std::string, double>& entries() const { return weights_; }

    /// Parses lines of the form `relationship-name = weight`.
    static RelationMap parse(std::istream& in);

private:
    std::map<std::string, double> weights_;
};

/// Immutable weighted network: labelled nodes with influence weights and
/// undirected weighted edges. Duplicate edge rows merge by keeping the
/// maximum weight. Safe to share across concurrent readers.
class WeightedNetwork {
public:
    /// Builds and validates a network from label/weight pairs and
    /// (label, label, weight) edge rows.
    static WeightedNetwork build(std::vector<std::pair<std::string, double>> nodes,
                                 const std::vector<std::tuple<std::string, std::string, double>>& edges);

    /// Parses CSV sources. Node header: `label,weight` (weight optional,
    /// default 1). Edge header: `source,target,relationship` (requires
    /// `relations`) or `source,target,weight`. Edge endpoints missing from
    /// the node file are auto-registered with weight 1.
    static WeightedNetwork parse(std::istream& nodes_csv, std::istream& edges_csv,
                                 const RelationMap* relations);

    int size() const { return n_; }
    Coalition all() const { return Coalition::full(n_); }
    const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
    const std::vector<std::string>& labels() const { return labels_; }
    double node_weight(int i) const { return node_weights_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& node_weights() const { return node_weights_; }
    std::optional<int> index_of(const std::string& label) const;
    const std::vector<Edge>& edges() const { return edges_; }
    Coalition adjacency(int i) const { return Coalition{adj_[static_cast<std::size_t>(i)]}; }

    /// Component decomposition of the induced subgraph G_S, ordered by
    /// smallest member index. Writes into `out` (capacity >= 64), returns
    /// the component count.
    int decompose(Coalition S, Coalition* out) const;
    std::vector<Coalition> components(Coalition S) const;
    bool is_connected(Coalition S) const;

    /// Writes `label,weight` and `source,target,weight` CSVs that parse
    /// back to an identical network.
    void serialize(std::ostream& nodes_csv, std::ostream& edges_csv) const;

private:
    WeightedNetwork() = default;
    void add_node(const std::string& label, double weight);
    void add_edge(int a, int b, double weight);
    void finalize();

    int n_ = 0;
    std::vector<std::string> labels_;
    std::vector<double> node_weights_;
    std::map<std::string, int> index_;
    std::vector<Edge> edges_;
    std::array<std::uint64_t, 64> adj_{};
};

} // namespace gtcent
