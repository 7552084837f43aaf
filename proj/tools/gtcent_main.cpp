#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gtcent/errors.hpp"
#include "gtcent/exact.hpp"
#include "gtcent/fixtures.hpp"
#include "gtcent/io.hpp"
#include "gtcent/parallel.hpp"
#include "gtcent/reporting.hpp"
#include "gtcent/sampling.hpp"

namespace {

using namespace gtcent;

// exit codes: 0 ok, 2 usage, 3 validation, 4 capacity
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int env_default_threads() {
    const char* env = std::getenv("GTCENT_THREADS");
    if (env == nullptr) return 0;
    const int t = std::atoi(env);
    return t > 0 ? t : 0;
}

void apply_threads(int threads) {
    if (threads > 0) omp_set_num_threads(threads);
}

std::string join_u64(const std::vector<std::uint64_t>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(xs[i]);
    }
    return out;
}

struct NetworkArgs {
    std::string nodes_path;
    std::string edges_path;
    std::string relations_path;
    std::string partition_path;

    void attach(CLI::App* cmd, bool with_partition) {
        cmd->add_option("--nodes", nodes_path, "node CSV (label,weight)")->required();
        cmd->add_option("--edges", edges_path,
                        "edge CSV (source,target,relationship or source,target,weight)")
            ->required();
        cmd->add_option("--relations", relations_path,
                        "relation map file (name = weight), required for relationship edges");
        if (with_partition)
            cmd->add_option("--partition", partition_path, "partition file (label = union-index)");
    }

    io::LoadedNetwork load() const {
        std::optional<std::string> rel;
        if (!relations_path.empty()) rel = relations_path;
        return io::load_network(nodes_path, edges_path, rel);
    }
};

struct EstimateArgs {
    NetworkArgs net;
    std::string game_name = "mwconn";
    std::string method_name;
    std::uint64_t ell = 1000;
    std::uint64_t ell_r = 100;
    std::uint64_t ell_s = 10;
    int reps = 1;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out_prefix;
};

struct ExactArgs {
    NetworkArgs net;
    std::string game_name = "mwconn";
    std::string method_name;
    int threads = 0;
    std::string out_prefix;
};

struct BoundArgs {
    NetworkArgs net;
    double epsilon = 0.0;
    double ell = 0.0;
    double alpha = 0.0;
    double r = -1.0;
    double r2 = -1.0;
    bool has_epsilon = false;
    bool has_ell = false;
};

bool needs_partition(EstimatorMethod method) {
    return method == EstimatorMethod::BanzhafOwenTwoStage ||
           method == EstimatorMethod::OwenCompatiblePermutation;
}

int run_estimate(const EstimateArgs& args) {
    const EstimatorMethod method = estimator_method_from_string(args.method_name);
    if (needs_partition(method) && args.net.partition_path.empty())
        throw UsageError("--method " + args.method_name + " requires --partition");
    apply_threads(args.threads);

    const io::LoadedNetwork loaded = args.net.load();
    const GameSpec game(loaded.net, game_kind_from_string(args.game_name));
    std::optional<PartitionStructure> partition;
    io::Metadata meta;
    meta.emplace_back("command", "estimate");
    meta.emplace_back("method", to_string(method));
    meta.emplace_back("game", args.game_name);
    meta.emplace_back("n", std::to_string(loaded.net.size()));
    if (method == EstimatorMethod::BanzhafOwenTwoStage) {
        meta.emplace_back("ell_r", std::to_string(args.ell_r));
        meta.emplace_back("ell_s", std::to_string(args.ell_s));
    } else {
        meta.emplace_back("ell", std::to_string(args.ell));
    }
    meta.emplace_back("reps", std::to_string(args.reps));
    meta.emplace_back("seed", std::to_string(args.seed));
    for (const auto& d : loaded.digests) meta.push_back(d);
    if (!args.net.partition_path.empty()) {
        partition = io::load_partition(args.net.partition_path, loaded.net);
        meta.emplace_back("partition_digest", io::fnv1a_hex(io::read_file(args.net.partition_path)));
    }

    EstimatorConfig config;
    config.method = method;
    config.ell = args.ell;
    config.ell_r = args.ell_r;
    config.ell_s = args.ell_s;
    const ReplicationResult result =
        replicate(game, partition ? &*partition : nullptr, config, args.reps, args.seed);

    meta.emplace_back("effective_ell", join_u64(result.averaged.effective_ell));
    if (method == EstimatorMethod::BanzhafOwenTwoStage) {
        meta.emplace_back("effective_ell_r", join_u64(result.averaged.effective_ell_r));
        meta.emplace_back("effective_ell_s", join_u64(result.averaged.effective_ell_s));
    }

    const std::string alloc_path = args.out_prefix + ".allocation.csv";
    const std::string rank_path = args.out_prefix + ".ranking.csv";
    io::write_allocation_file(alloc_path, loaded.net.labels(), result.averaged.values, meta);
    io::write_ranking_file(rank_path, rank(result.averaged.values, loaded.net.labels()), meta);
    std::printf("wrote %s\nwrote %s\n", alloc_path.c_str(), rank_path.c_str());
    if (args.reps >= 2) {
        std::vector<AllocationVector> vectors;
        vectors.reserve(result.replicates.size());
        for (const AllocationEstimate& est : result.replicates) vectors.push_back(est.values);
        const std::string summary_path = args.out_prefix + ".summary.csv";
        io::write_summary_file(summary_path, loaded.net.labels(), summarize(vectors), meta);
        std::printf("wrote %s\n", summary_path.c_str());
    }
    std::printf("elapsed_seconds=%.3f cpu_seconds=%.3f\n", result.averaged.wall_seconds,
                result.averaged.cpu_seconds);
    return 0;
}

int run_exact(const ExactArgs& args) {
    const bool partition_method =
        args.method_name == "owen" || args.method_name == "banzhaf-owen";
    if (args.method_name != "shapley" && args.method_name != "banzhaf" && !partition_method)
        throw UsageError("unknown exact method '" + args.method_name + "'");
    if (partition_method && args.net.partition_path.empty())
        throw UsageError("--method " + args.method_name + " requires --partition");
    apply_threads(args.threads);

    const io::LoadedNetwork loaded = args.net.load();
    const GameSpec game(loaded.net, game_kind_from_string(args.game_name));
    io::Metadata meta;
    meta.emplace_back("command", "exact");
    meta.emplace_back("method", args.method_name);
    meta.emplace_back("game", args.game_name);
    meta.emplace_back("n", std::to_string(loaded.net.size()));
    for (const auto& d : loaded.digests) meta.push_back(d);

    std::optional<PartitionStructure> partition;
    if (!args.net.partition_path.empty()) {
        partition = io::load_partition(args.net.partition_path, loaded.net);
        meta.emplace_back("partition_digest", io::fnv1a_hex(io::read_file(args.net.partition_path)));
    }

    AllocationVector values;
    if (args.method_name == "shapley") values = exact_shapley(game);
    if (args.method_name == "banzhaf") values = exact_banzhaf(game);
    if (args.method_name == "owen") values = exact_owen(game, *partition);
    if (args.method_name == "banzhaf-owen") values = exact_banzhaf_owen(game, *partition);

    const std::string alloc_path = args.out_prefix + ".allocation.csv";
    const std::string rank_path = args.out_prefix + ".ranking.csv";
    io::write_allocation_file(alloc_path, loaded.net.labels(), values, meta);
    io::write_ranking_file(rank_path, rank(values, loaded.net.labels()), meta);
    std::printf("wrote %s\nwrote %s\n", alloc_path.c_str(), rank_path.c_str());
    return 0;
}

int run_bound(const BoundArgs& args) {
    if (args.has_epsilon == args.has_ell)
        throw UsageError("bound: give exactly one of --epsilon or --ell");
    int r_sources = 0;
    if (args.r >= 0.0) ++r_sources;
    if (args.r2 >= 0.0) ++r_sources;
    const bool has_network = !args.net.nodes_path.empty() || !args.net.edges_path.empty();
    if (has_network) ++r_sources;
    if (r_sources != 1)
        throw UsageError("bound: give exactly one range source (--r, --r2, or --nodes/--edges)");

    double r = args.r;
    if (args.r2 >= 0.0) r = std::sqrt(args.r2);
    if (has_network) {
        if (args.net.nodes_path.empty() || args.net.edges_path.empty())
            throw UsageError("bound: network range needs both --nodes and --edges");
        r = contribution_range_bound(args.net.load().net);
        std::printf("r=%.6f\n", r);
    }

    std::printf("alpha=%.6f\n", args.alpha);
    if (args.has_ell) {
        if (args.ell < 2.0 || args.ell != std::floor(args.ell))
            throw UsageError("bound: --ell must be an integer >= 2");
        const auto ell = static_cast<std::uint64_t>(args.ell);
        std::printf("ell=%llu\n", static_cast<unsigned long long>(ell));
        std::printf("epsilon=%.6f\n", banzhaf_error_bound(ell, args.alpha, r));
    } else {
        std::printf("epsilon=%.6f\n", args.epsilon);
        const ErrorBudget budget{args.epsilon, args.alpha, r};
        std::printf("ell=%llu\n", static_cast<unsigned long long>(banzhaf_sample_size(budget)));
    }
    return 0;
}

int run_lorenz(const std::string& alloc_path, const std::string& out_prefix) {
    const io::AllocationFile file = io::read_allocation_file(alloc_path);
    const LorenzCurve curve = lorenz(file.values);
    io::Metadata meta;
    meta.emplace_back("command", "lorenz");
    meta.emplace_back("allocation_digest", io::fnv1a_hex(io::read_file(alloc_path)));
    const std::string path = out_prefix + ".lorenz.csv";
    io::write_lorenz_file(path, curve, meta);
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

int run_compare(const std::string& a_path, const std::string& b_path, int k,
                const std::string& out_prefix) {
    const RankingTable a = io::read_ranking_file(a_path);
    const RankingTable b = io::read_ranking_file(b_path);
    const RankingComparison cmp = compare_rankings(a, b, k);
    io::Metadata meta;
    meta.emplace_back("command", "compare");
    meta.emplace_back("a_digest", io::fnv1a_hex(io::read_file(a_path)));
    meta.emplace_back("b_digest", io::fnv1a_hex(io::read_file(b_path)));
    if (out_prefix.empty()) {
        std::fputs(io::format_comparison(cmp, meta).c_str(), stdout);
    } else {
        const std::string path = out_prefix + ".compare.csv";
        io::write_comparison_file(path, cmp, meta);
        std::printf("wrote %s\n", path.c_str());
    }
    return 0;
}

int run_fixtures(const std::string& dir) {
    for (const std::string& path : fixtures::write_fixture_files(dir))
        std::printf("wrote %s\n", path.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"game-theoretic centrality measures on weighted networks"};
    app.require_subcommand(1);
    std::function<int()> action;

    auto estimate_args = std::make_shared<EstimateArgs>();
    CLI::App* estimate = app.add_subcommand("estimate", "Monte Carlo estimation of a value");
    estimate_args->net.attach(estimate, true);
    estimate->add_option("--game", estimate_args->game_name, "mwconn or awconn")
        ->check(CLI::IsMember({"mwconn", "awconn"}));
    estimate->add_option("--method", estimate_args->method_name,
                         "banzhaf | banzhaf-owen | shapley | owen")
        ->required()
        ->check(CLI::IsMember({"banzhaf", "banzhaf-owen", "shapley", "owen"}));
    estimate->add_option("--ell", estimate_args->ell, "sample count (simple/permutation methods)");
    estimate->add_option("--ell-r", estimate_args->ell_r, "outer sample count (two-stage)");
    estimate->add_option("--ell-s", estimate_args->ell_s, "inner sample count (two-stage)");
    estimate->add_option("--reps", estimate_args->reps, "independent replications")
        ->check(CLI::PositiveNumber);
    estimate->add_option("--seed", estimate_args->seed, "master seed");
    estimate->add_option("--threads", estimate_args->threads, "worker threads (default: GTCENT_THREADS)");
    estimate->add_option("--out", estimate_args->out_prefix, "output file prefix")->required();
    estimate->callback([estimate_args, &action] {
        action = [estimate_args] { return run_estimate(*estimate_args); };
    });

    auto exact_args = std::make_shared<ExactArgs>();
    CLI::App* exact = app.add_subcommand("exact", "exact value by enumeration (small n)");
    exact_args->net.attach(exact, true);
    exact->add_option("--game", exact_args->game_name, "mwconn or awconn")
        ->check(CLI::IsMember({"mwconn", "awconn"}));
    exact->add_option("--method", exact_args->method_name,
                      "banzhaf | banzhaf-owen | shapley | owen")
        ->required()
        ->check(CLI::IsMember({"banzhaf", "banzhaf-owen", "shapley", "owen"}));
    exact->add_option("--threads", exact_args->threads, "worker threads (default: GTCENT_THREADS)");
    exact->add_option("--out", exact_args->out_prefix, "output file prefix")->required();
    exact->callback([exact_args, &action] {
        action = [exact_args] { return run_exact(*exact_args); };
    });

    auto bound_args = std::make_shared<BoundArgs>();
    CLI::App* bound = app.add_subcommand("bound", "Hoeffding sample-size / error calculator");
    bound->add_option("--epsilon", bound_args->epsilon, "target additive error");
    bound->add_option("--ell", bound_args->ell, "sample count");
    bound->add_option("--alpha", bound_args->alpha, "failure probability in (0,1)")->required();
    bound->add_option("--r", bound_args->r, "contribution range");
    bound->add_option("--r2", bound_args->r2, "squared contribution range");
    bound->add_option("--nodes", bound_args->net.nodes_path, "node CSV (range from network)");
    bound->add_option("--edges", bound_args->net.edges_path, "edge CSV (range from network)");
    bound->add_option("--relations", bound_args->net.relations_path, "relation map file");
    bound->callback([bound_args, bound, &action] {
        bound_args->has_epsilon = bound->count("--epsilon") > 0;
        bound_args->has_ell = bound->count("--ell") > 0;
        action = [bound_args] { return run_bound(*bound_args); };
    });

    auto lorenz_alloc = std::make_shared<std::string>();
    auto lorenz_out = std::make_shared<std::string>();
    CLI::App* lorenz_cmd = app.add_subcommand("lorenz", "Lorenz curve of an allocation file");
    lorenz_cmd->add_option("--alloc", *lorenz_alloc, "allocation CSV")->required();
    lorenz_cmd->add_option("--out", *lorenz_out, "output file prefix")->required();
    lorenz_cmd->callback([lorenz_alloc, lorenz_out, &action] {
        action = [lorenz_alloc, lorenz_out] { return run_lorenz(*lorenz_alloc, *lorenz_out); };
    });

    auto cmp_a = std::make_shared<std::string>();
    auto cmp_b = std::make_shared<std::string>();
    auto cmp_k = std::make_shared<int>(10);
    auto cmp_out = std::make_shared<std::string>();
    CLI::App* compare = app.add_subcommand("compare", "compare two ranking files");
    compare->add_option("--a", *cmp_a, "first ranking CSV")->required();
    compare->add_option("--b", *cmp_b, "second ranking CSV")->required();
    compare->add_option("--k", *cmp_k, "top-k window")->check(CLI::PositiveNumber);
    compare->add_option("--out", *cmp_out, "output file prefix (default: stdout)");
    compare->callback([cmp_a, cmp_b, cmp_k, cmp_out, &action] {
        action = [cmp_a, cmp_b, cmp_k, cmp_out] {
            return run_compare(*cmp_a, *cmp_b, *cmp_k, *cmp_out);
        };
    });

    auto fixtures_dir = std::make_shared<std::string>();
    CLI::App* fixtures_cmd = app.add_subcommand("fixtures", "materialize demo fixtures");
    fixtures_cmd->add_option("--dir", *fixtures_dir, "output directory")->required();
    fixtures_cmd->callback([fixtures_dir, &action] {
        action = [fixtures_dir] { return run_fixtures(*fixtures_dir); };
    });

    estimate_args->threads = env_default_threads();
    exact_args->threads = env_default_threads();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return action();
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const gtcent::CapacityError& e) {
        std::fprintf(stderr, "capacity error: %s\n", e.what());
        return 4;
    } catch (const gtcent::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
