#include "gtcent/network.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "gtcent/errors.hpp"

namespace gtcent {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double parse_weight(const std::string& s, const std::string& context) {
    try {
        std::size_t pos = 0;
        const double w = std::stod(s, &pos);
        if (pos != s.size()) throw ValidationError(context + ": malformed number '" + s + "'");
        return w;
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError(context + ": malformed number '" + s + "'");
    }
}

} // namespace

void RelationMap::set(const std::string& name, double weight) {
    if (weight <= 0.0) throw ValidationError("relation '" + name + "': weight must be positive");
    weights_[name] = weight;
}

double RelationMap::at(const std::string& name) const {
    const auto it = weights_.find(name);
    if (it == weights_.end()) throw ValidationError("unknown relationship '" + name + "'");
    return it->second;
}

RelationMap RelationMap::parse(std::istream& in) {
    RelationMap map;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.rfind('=');
        if (eq == std::string::npos)
            throw ValidationError("relation map line " + std::to_string(lineno) +
                                  ": expected 'name = weight'");
        const std::string name = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (name.empty())
            throw ValidationError("relation map line " + std::to_string(lineno) + ": empty name");
        map.set(name, parse_weight(value, "relation map line " + std::to_string(lineno)));
    }
    return map;
}

void WeightedNetwork::add_node(const std::string& label, double weight) {
    if (index_.count(label))
        throw ValidationError("duplicate node label '" + label + "'");
    if (weight < 0.0)
        throw ValidationError("node '" + label + "': negative weight");
    if (n_ >= 64)
        throw CapacityError("network exceeds the 64-node limit");
    index_[label] = n_++;
    labels_.push_back(label);
    node_weights_.push_back(weight);
}

void WeightedNetwork::add_edge(int a, int b, double weight) {
    if (a == b)
        throw ValidationError("self-loop on node '" + labels_[static_cast<std::size_t>(a)] + "'");
    if (weight < 0.0)
        throw ValidationError("edge " + labels_[static_cast<std::size_t>(a)] + "-" +
                              labels_[static_cast<std::size_t>(b)] + ": negative weight");
    if (a > b) std::swap(a, b);
    for (Edge& e : edges_) {
        if (e.a == a && e.b == b) {
            // duplicate pair: keep the maximum weight
            e.weight = std::max(e.weight, weight);
            return;
        }
    }
    edges_.push_back(Edge{a, b, weight});
}

void WeightedNetwork::finalize() {
    std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    adj_.fill(0);
    for (const Edge& e : edges_) {
        adj_[static_cast<std::size_t>(e.a)] |= std::uint64_t{1} << e.b;
        adj_[static_cast<std::size_t>(e.b)] |= std::uint64_t{1} << e.a;
    }
}

WeightedNetwork WeightedNetwork::build(
    std::vector<std::pair<std::string, double>> nodes,
    const std::vector<std::tuple<std::string, std::string, double>>& edges) {
    WeightedNetwork net;
    for (const auto& [label, weight] : nodes) net.add_node(label, weight);
    for (const auto& [sa, sb, w] : edges) {
        for (const std::string* s : {&sa, &sb})
            if (!net.index_.count(*s)) net.add_node(*s, 1.0);
        net.add_edge(net.index_.at(sa), net.index_.at(sb), w);
    }
    net.finalize();
    return net;
}

WeightedNetwork WeightedNetwork::parse(std::istream& nodes_csv, std::istream& edges_csv,
                                       const RelationMap* relations) {
    std::vector<std::pair<std::string, double>> nodes;
    std::string line;
    int lineno = 0;
    bool header = true;
    while (std::getline(nodes_csv, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto cells = split_csv(line);
        if (header) {
            header = false;
            if (lower(cells[0]) != "label")
                throw ValidationError("node file: expected header starting with 'label'");
            continue;
        }
        if (cells[0].empty())
            throw ValidationError("node file row " + std::to_string(lineno) + ": empty label");
        double w = 1.0;
        if (cells.size() > 1 && !cells[1].empty())
            w = parse_weight(cells[1], "node file row " + std::to_string(lineno));
        nodes.emplace_back(cells[0], w);
    }

    std::vector<std::tuple<std::string, std::string, double>> edges;
    lineno = 0;
    header = true;
    bool relation_mode = false;
    while (std::getline(edges_csv, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto cells = split_csv(line);
        if (header) {
            header = false;
            if (cells.size() < 3)
                throw ValidationError("edge file: expected a three-column header");
            const std::string third = lower(cells[2]);
            if (third == "relationship") {
                relation_mode = true;
                if (relations == nullptr)
                    throw ValidationError("edge file uses relationships but no relation map was given");
            } else if (third == "weight") {
                relation_mode = false;
            } else {
                throw ValidationError("edge file: third column must be 'relationship' or 'weight'");
            }
            continue;
        }
        if (cells.size() < 3)
            throw ValidationError("edge file row " + std::to_string(lineno) + ": expected 3 columns");
        double w = 0.0;
        if (relation_mode) {
            if (!relations->contains(cells[2]))
                throw ValidationError("unknown relationship '" + cells[2] + "' (edge file row " +
                                      std::to_string(lineno) + ")");
            w = relations->at(cells[2]);
        } else {
            w = parse_weight(cells[2], "edge file row " + std::to_string(lineno));
        }
        edges.emplace_back(cells[0], cells[1], w);
    }
    return build(std::move(nodes), edges);
}

std::optional<int> WeightedNetwork::index_of(const std::string& label) const {
    const auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int WeightedNetwork::decompose(Coalition S, Coalition* out) const {
    int count = 0;
    std::uint64_t rem = S.bits();
    while (rem != 0) {
        std::uint64_t comp = rem & (~rem + 1); // lowest remaining bit
        std::uint64_t frontier = comp;
        while (frontier != 0) {
            std::uint64_t grow = 0;
            for (std::uint64_t f = frontier; f != 0; f &= f - 1)
                grow |= adj_[static_cast<std::size_t>(std::countr_zero(f))];
            frontier = grow & rem & ~comp;
            comp |= frontier;
        }
        out[count++] = Coalition{comp};
        rem &= ~comp;
    }
    return count;
}

std::vector<Coalition> WeightedNetwork::components(Coalition S) const {
    Coalition buf[64];
    const int count = decompose(S, buf);
    return std::vector<Coalition>(buf, buf + count);
}

bool WeightedNetwork::is_connected(Coalition S) const {
    if (S.is_empty()) return true; // by convention; never queried by game code
    Coalition buf[64];
    return decompose(S, buf) == 1;
}

void WeightedNetwork::serialize(std::ostream& nodes_csv, std::ostream& edges_csv) const {
    char buf[64];
    nodes_csv << "label,weight\n";
    for (int i = 0; i < n_; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", node_weights_[static_cast<std::size_t>(i)]);
        nodes_csv << labels_[static_cast<std::size_t>(i)] << ',' << buf << '\n';
    }
    edges_csv << "source,target,weight\n";
    for (const Edge& e : edges_) {
        std::snprintf(buf, sizeof buf, "%.17g", e.weight);
        edges_csv << labels_[static_cast<std::size_t>(e.a)] << ','
                  << labels_[static_cast<std::size_t>(e.b)] << ',' << buf << '\n';
    }
}

} // namespace gtcent
