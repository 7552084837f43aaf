#include "gtcent/partition.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <numeric>

#include "gtcent/errors.hpp"

namespace gtcent {

PartitionStructure PartitionStructure::build(const std::vector<int>& union_of) {
    const int n = static_cast<int>(union_of.size());
    if (n == 0) throw ValidationError("partition: empty player set");
    const int m = *std::max_element(union_of.begin(), union_of.end()) + 1;
    PartitionStructure p;
    p.union_of_ = union_of;
    p.unions_.assign(static_cast<std::size_t>(m), Coalition::empty());
    for (int i = 0; i < n; ++i) {
        const int u = union_of[static_cast<std::size_t>(i)];
        if (u < 0 || u >= m) throw ValidationError("partition: union index out of range");
        p.unions_[static_cast<std::size_t>(u)] = p.unions_[static_cast<std::size_t>(u)].with(i);
    }
    for (int u = 0; u < m; ++u)
        if (p.unions_[static_cast<std::size_t>(u)].is_empty())
            throw ValidationError("partition: union " + std::to_string(u + 1) + " is empty");
    return p;
}

PartitionStructure PartitionStructure::singletons(int n) {
    std::vector<int> u(static_cast<std::size_t>(n));
    std::iota(u.begin(), u.end(), 0);
    return build(u);
}

PartitionStructure PartitionStructure::grand(int n) {
    return build(std::vector<int>(static_cast<std::size_t>(n), 0));
}

namespace {
std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}
} // namespace

PartitionStructure PartitionStructure::parse(std::istream& in, const WeightedNetwork& net) {
    std::vector<int> union_of(static_cast<std::size_t>(net.size()), -1);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.rfind('=');
        if (eq == std::string::npos)
            throw ValidationError("partition line " + std::to_string(lineno) +
                                  ": expected 'label = union-index'");
        const std::string label = trim(t.substr(0, eq));
        const std::string idx = trim(t.substr(eq + 1));
        const auto node = net.index_of(label);
        if (!node)
            throw ValidationError("partition line " + std::to_string(lineno) +
                                  ": unknown node '" + label + "'");
        int u = 0;
        try {
            u = std::stoi(idx);
        } catch (const std::exception&) {
            throw ValidationError("partition line " + std::to_string(lineno) +
                                  ": malformed union index '" + idx + "'");
        }
        if (u < 1)
            throw ValidationError("partition line " + std::to_string(lineno) +
                                  ": union index must be >= 1");
        if (union_of[static_cast<std::size_t>(*node)] != -1)
            throw ValidationError("partition: node '" + label + "' listed twice");
        union_of[static_cast<std::size_t>(*node)] = u - 1;
    }
    for (int i = 0; i < net.size(); ++i)
        if (union_of[static_cast<std::size_t>(i)] == -1)
            throw ValidationError("partition: node '" + net.label(i) + "' is missing");
    return build(union_of);
}

} // namespace gtcent
