#include "gtcent/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gtcent/errors.hpp"

namespace gtcent::io {

namespace {

std::string fmt(const char* spec, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

std::string fixed6(double x) { return fmt("%.6f", x); }
std::string full(double x) { return fmt("%.17g", x); }

void write_header(std::ostream& out, const std::string& kind, const Metadata& meta) {
    out << "# gtcent-" << kind << "-v1\n";
    for (const auto& [key, value] : meta) out << "# " << key << '=' << value << '\n';
}

struct ParsedTable {
    Metadata meta;
    std::vector<std::vector<std::string>> rows; // data rows, split on commas
    std::vector<std::string> header;
};

ParsedTable parse_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    ParsedTable table;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::size_t eq = line.find('=');
            if (eq != std::string::npos) {
                std::size_t start = line.find_first_not_of("# ");
                table.meta.emplace_back(line.substr(start, eq - start), line.substr(eq + 1));
            }
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!saw_header) {
            table.header = cells;
            saw_header = true;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    return table;
}

double parse_double(const std::string& s, const std::string& path) {
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        throw ValidationError("'" + path + "': malformed number '" + s + "'");
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    return out;
}

} // namespace

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

LoadedNetwork load_network(const std::string& nodes_path, const std::string& edges_path,
                           const std::optional<std::string>& relations_path) {
    const std::string nodes_bytes = read_file(nodes_path);
    const std::string edges_bytes = read_file(edges_path);
    RelationMap relations;
    bool have_relations = false;
    std::vector<std::pair<std::string, std::string>> digests;
    digests.emplace_back("nodes_digest", fnv1a_hex(nodes_bytes));
    digests.emplace_back("edges_digest", fnv1a_hex(edges_bytes));
    if (relations_path) {
        const std::string bytes = read_file(*relations_path);
        std::istringstream in(bytes);
        relations = RelationMap::parse(in);
        have_relations = true;
        digests.emplace_back("relations_digest", fnv1a_hex(bytes));
    }
    std::istringstream nodes_in(nodes_bytes), edges_in(edges_bytes);
    return LoadedNetwork{WeightedNetwork::parse(nodes_in, edges_in, have_relations ? &relations : nullptr),
                         std::move(digests)};
}

PartitionStructure load_partition(const std::string& path, const WeightedNetwork& net) {
    std::istringstream in(read_file(path));
    return PartitionStructure::parse(in, net);
}

void write_allocation_file(const std::string& path, const std::vector<std::string>& labels,
                           const AllocationVector& values, const Metadata& meta) {
    if (labels.size() != values.size())
        throw ValidationError("allocation file: label and value counts differ");
    std::ofstream out = open_out(path);
    Metadata extended = meta;
    std::string fp;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) fp += ',';
        fp += full(values[i]);
    }
    extended.emplace_back("values_full", fp);
    write_header(out, "allocation", extended);
    out << "label,value\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
        out << labels[i] << ',' << fixed6(values[i]) << '\n';
}

AllocationFile read_allocation_file(const std::string& path) {
    const ParsedTable table = parse_table(path);
    if (table.header != std::vector<std::string>{"label", "value"})
        throw ValidationError("'" + path + "' is not an allocation file");
    AllocationFile file;
    file.meta = table.meta;
    for (const auto& row : table.rows) {
        if (row.size() != 2) throw ValidationError("'" + path + "': malformed allocation row");
        file.labels.push_back(row[0]);
        file.values.push_back(parse_double(row[1], path));
    }
    for (const auto& [key, value] : table.meta) {
        if (key != "values_full") continue;
        std::stringstream ss(value);
        std::string cell;
        AllocationVector parsed;
        while (std::getline(ss, cell, ',')) parsed.push_back(parse_double(cell, path));
        if (parsed.size() == file.values.size()) file.values = std::move(parsed);
    }
    return file;
}

void write_ranking_file(const std::string& path, const RankingTable& table, const Metadata& meta) {
    std::ofstream out = open_out(path);
    write_header(out, "ranking", meta);
    out << "position,label,allocation\n";
    for (const RankingRow& row : table.rows)
        out << row.position << ',' << row.label << ',' << fixed6(row.allocation) << '\n';
}

RankingTable read_ranking_file(const std::string& path) {
    const ParsedTable parsed = parse_table(path);
    if (parsed.header != std::vector<std::string>{"position", "label", "allocation"})
        throw ValidationError("'" + path + "' is not a ranking file");
    RankingTable table;
    for (const auto& row : parsed.rows) {
        if (row.size() != 3) throw ValidationError("'" + path + "': malformed ranking row");
        table.rows.push_back(RankingRow{static_cast<int>(parse_double(row[0], path)), row[1],
                                        parse_double(row[2], path)});
    }
    return table;
}

void write_summary_file(const std::string& path, const std::vector<std::string>& labels,
                        const ReplicationSummary& summary, const Metadata& meta) {
    if (labels.size() != summary.per_player.size())
        throw ValidationError("summary file: label and row counts differ");
    std::ofstream out = open_out(path);
    write_header(out, "summary", meta);
    out << "label,min,q1,median,mean,q3,max,cv\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const PlayerSummary& s = summary.per_player[i];
        out << labels[i] << ',' << fixed6(s.min) << ',' << fixed6(s.q1) << ',' << fixed6(s.median)
            << ',' << fixed6(s.mean) << ',' << fixed6(s.q3) << ',' << fixed6(s.max) << ','
            << fixed6(s.cv) << '\n';
    }
}

void write_lorenz_file(const std::string& path, const LorenzCurve& curve, const Metadata& meta) {
    std::ofstream out = open_out(path);
    write_header(out, "lorenz", meta);
    out << "u,L\n";
    for (std::size_t k = 0; k < curve.u.size(); ++k)
        out << fixed6(curve.u[k]) << ',' << fixed6(curve.L[k]) << '\n';
}

std::string format_comparison(const RankingComparison& cmp, const Metadata& meta) {
    std::ostringstream out;
    write_header(out, "comparison", meta);
    out << "# k=" << cmp.k << '\n';
    out << "# overlap=" << cmp.overlap << '\n';
    out << "# entering=";
    for (std::size_t i = 0; i < cmp.entering.size(); ++i) out << (i ? ";" : "") << cmp.entering[i];
    out << '\n';
    out << "# leaving=";
    for (std::size_t i = 0; i < cmp.leaving.size(); ++i) out << (i ? ";" : "") << cmp.leaving[i];
    out << '\n';
    out << "label,position_a,position_b,delta\n";
    for (const RankingComparison::Delta& d : cmp.deltas)
        out << d.label << ',' << d.position_a << ',' << d.position_b << ',' << d.delta << '\n';
    return out.str();
}

void write_comparison_file(const std::string& path, const RankingComparison& cmp,
                           const Metadata& meta) {
    std::ofstream out = open_out(path);
    out << format_comparison(cmp, meta);
}

} // namespace gtcent::io
