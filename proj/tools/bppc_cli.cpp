#include "bppc/core.hpp"
#include "bppc/experiment.hpp"
#include "bppc/generators.hpp"
#include "bppc/instance_io.hpp"
#include "bppc/oracle.hpp"
#include "bppc/rng.hpp"
#include "bppc/solver_bn.hpp"
#include "bppc/solver_classic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace bppc;

namespace {

// Exit codes: 0 success, 1 usage or configuration error, 2 solve or I/O failure.
constexpr int exit_usage = 1;
constexpr int exit_failure = 2;

std::string param_text(double value)
{
    std::ostringstream os;
    os << value;
    return os.str();
}

int cmd_gen(const std::string& kind, int n, Weight capacity, double density, int count, std::uint64_t seed,
            const fs::path& out)
{
    auto spec = ClassSpec::make(parse_class_kind(kind), n, capacity, density, count, seed);
    const auto generated = build_class(spec);
    fs::create_directories(out);
    for (const auto& g : generated) {
        std::ostringstream name;
        name << kind << "_n" << n << "_b" << capacity << "_d" << param_text(density) << '_' << std::setw(3)
             << std::setfill('0') << g.index << ".bppc";
        write_instance(g.instance, out / name.str());
        std::cout << (out / name.str()).string() << " density=" << std::setprecision(6) << g.density
                  << " graph_seed=" << g.graph_seed << " weight_seed=" << g.weight_seed << '\n';
    }
    return 0;
}

struct GraphSample {
    IntervalModel model;
    ConflictGraph graph;
};

GraphSample sample_graph(const std::string& kind, int n, double param, std::uint64_t seed)
{
    if (kind == "interval") {
        auto model = generate_interval_model({n, param, seed});
        auto graph = build_conflict_graph(model);
        return {std::move(model), std::move(graph)};
    }
    if (kind == "threshold") {
        auto t = generate_threshold_graph({n, param, seed});
        return {std::move(t.model), std::move(t.graph)};
    }
    throw std::invalid_argument("unknown graph kind '" + kind + "' (expected interval or threshold)");
}

int cmd_gen_graph(const std::string& kind, int n, double param, std::uint64_t seed)
{
    const auto sample = sample_graph(kind, n, param, seed);
    std::cout << "# kind=" << kind << " n=" << n << " param=" << param << " seed=" << seed
              << " density=" << std::setprecision(6) << edge_density(sample.graph) << '\n';
    std::cout << n << ' ' << sample.graph.edge_count() << '\n';
    for (const auto& iv : sample.model) std::cout << iv.id << ' ' << iv.l << ' ' << iv.r << '\n';
    for (auto [u, v] : sample.graph.edges()) std::cout << u << ' ' << v << '\n';
    return 0;
}

int cmd_density_check(const std::string& kind, int n, double param, int trials, std::uint64_t seed)
{
    if (trials < 1) throw std::invalid_argument("--trials must be >= 1");
    std::vector<double> values(trials);
    for (int t = 0; t < trials; ++t) {
        const auto s = derive_seed(seed, static_cast<std::uint64_t>(t));
        if (kind == "interval") {
            values[t] = edge_density(count_intersections(generate_interval_model({n, param, s})), n);
        } else {
            values[t] = edge_density(sample_graph(kind, n, param, s).graph);
        }
    }
    double mean = 0.0;
    for (double v : values) mean += v / trials;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    const double stdev = trials > 1 ? std::sqrt(var / (trials - 1)) : 0.0;
    const double expected = kind == "interval" ? param : f_of_d(n, param);
    std::cout << std::fixed << std::setprecision(4) << "mean " << mean << "\nstdev " << stdev << "\nexpected "
              << expected << '\n';
    return 0;
}

int cmd_solve(const std::string& alg, const fs::path& in, bool json, bool literature)
{
    const Instance instance = literature ? read_literature_instance(in) : read_instance(in);
    SolveReport report;
    Packing packing;
    switch (parse_algorithm(alg)) {
    case Algorithm::bn: {
        if (!instance.has_model())
            throw std::invalid_argument("bn needs an interval model; this instance has none");
        auto r = solve_bn(instance);
        packing = std::move(r.packing);
        report = r.report;
        break;
    }
    case Algorithm::m: {
        auto r = best_of_m(instance);
        packing = std::move(r.packing);
        report = r.report;
        break;
    }
    case Algorithm::exact: {
        auto r = exact_min_bins(instance, {OracleLimit::hard_cap});
        packing = std::move(r.packing);
        report = r.report;
        break;
    }
    }
    const Verdict verdict = verify_packing(instance, packing);
    if (!verdict.ok()) {
        std::cerr << "error: infeasible packing: " << verdict.describe() << '\n';
        return exit_failure;
    }
    if (json) {
        nlohmann::json j{{"algorithm", report.algorithm},
                         {"value", report.value},
                         {"lower_bound", report.lower_bound},
                         {"certified", report.certified_optimal},
                         {"elapsed_s", report.elapsed}};
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "algorithm " << report.algorithm << "\nvalue " << report.value << "\nlower_bound "
                  << report.lower_bound << "\ncertified " << (report.certified_optimal ? "yes" : "no") << '\n';
        // Timing goes to stderr so stdout is reproducible byte for byte.
        std::cerr << "elapsed_s " << std::fixed << std::setprecision(4) << report.elapsed << '\n';
    }
    return 0;
}

void write_file(const fs::path& path, const auto& writer)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    writer(out);
}

int cmd_bench(const fs::path& config_path, std::string out, bool serial)
{
    const auto config = load_config(config_path);
    if (out.empty()) out = config.output;
    if (out.empty()) throw std::invalid_argument("no output path: pass --out or set output in the config");
    const auto result = run_experiment(config, !serial);

    const fs::path csv(out);
    auto sibling = [&](const std::string& suffix) {
        return csv.parent_path() / (csv.stem().string() + suffix + csv.extension().string());
    };
    write_file(csv, [&](std::ostream& os) { write_metrics_csv(os, result.rows); });
    write_file(sibling(".instances"), [&](std::ostream& os) { write_instance_log(os, result.records); });
    if (!result.summary.empty())
        write_file(sibling(".summary"), [&](std::ostream& os) { write_metrics_csv(os, result.summary); });
    std::cout << "wrote " << result.rows.size() << " cells (" << result.records.size() << " solves) to " << out
              << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bin packing with interval conflicts: generators, solvers and experiments"};
    app.require_subcommand(1);

    std::string kind, alg, config_path, out;
    fs::path in, out_dir;
    int n = 0, count = 10, trials = 30;
    Weight capacity = 0;
    double density = 0.0, param = 0.0;
    std::uint64_t seed = 1;
    bool json = false, literature = false, serial = false;

    auto* gen = app.add_subcommand("gen", "Generate a TI/TM/TS instance class");
    gen->add_option("--class", kind, "ti, tm or ts")->required()->check(CLI::IsMember({"ti", "tm", "ts"}));
    gen->add_option("--n", n, "items per instance")->required()->check(CLI::PositiveNumber);
    gen->add_option("--b", capacity, "bin capacity")->required()->check(CLI::PositiveNumber);
    gen->add_option("--density", density, "Delta for ti, d for tm/ts")->required()->check(CLI::Range(0.0, 1.0));
    gen->add_option("--count", count, "instances")->check(CLI::PositiveNumber);
    gen->add_option("--seed", seed, "master seed");
    gen->add_option("--out", out_dir, "output directory")->required();

    auto* gen_graph = app.add_subcommand("gen-graph", "Dump one random interval or threshold graph");
    gen_graph->add_option("--kind", kind)->required()->check(CLI::IsMember({"interval", "threshold"}));
    gen_graph->add_option("--n", n)->required()->check(CLI::Range(2, 1 << 24));
    gen_graph->add_option("--param", param, "delta or d")->required()->check(CLI::Range(0.0, 1.0));
    gen_graph->add_option("--seed", seed);

    auto* solve = app.add_subcommand("solve", "Solve one instance file");
    solve->add_option("--alg", alg)->required()->check(CLI::IsMember({"bn", "m", "exact"}));
    solve->add_option("--in", in, "instance file")->required()->check(CLI::ExistingFile);
    solve->add_flag("--json", json, "machine-readable output");
    solve->add_flag("--literature", literature, "input uses the conflict-library format");

    auto* bench = app.add_subcommand("bench", "Run an experiment grid from a config file");
    bench->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
    bench->add_option("--out", out, "metrics CSV (defaults to the config's output)");
    bench->add_flag("--serial", serial, "solve instances on one thread");

    auto* check = app.add_subcommand("density-check", "Empirical edge density over many seeds");
    check->add_option("--kind", kind)->required()->check(CLI::IsMember({"interval", "threshold"}));
    check->add_option("--n", n)->required()->check(CLI::Range(2, 1 << 24));
    check->add_option("--param", param)->required()->check(CLI::Range(0.0, 1.0));
    check->add_option("--trials", trials)->check(CLI::PositiveNumber);
    check->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (*gen) return cmd_gen(kind, n, capacity, density, count, seed, out_dir);
        if (*gen_graph) return cmd_gen_graph(kind, n, param, seed);
        if (*solve) return cmd_solve(alg, in, json, literature);
        if (*bench) return cmd_bench(config_path, out, serial);
        if (*check) return cmd_density_check(kind, n, param, trials, seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return *solve ? exit_failure : exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_usage;
}
