#include "ghm_cli/app.hpp"

#include <CLI11.hpp>

#include <ostream>

#include "ghm/error.hpp"
#include "ghm_cli/commands.hpp"
#include "ghm_cli/run_config.hpp"

namespace ghm::cli {

namespace {

int exit_code_for(error_kind kind) {
    switch (kind) {
    case error_kind::io: return exit_io;
    case error_kind::numerical:
    case error_kind::convergence:
    case error_kind::evaluation: return exit_numerical;
    default: return exit_usage;
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gromov-Hausdorff estimates between model spaces and a graph search space over product manifolds",
                 "ghm"};
    app.set_version_flag("--version", std::string(GHM_VERSION));
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, cache_path, format, quad_method;
    unsigned threads = 0;
    std::uint64_t seed = 0;
    double abs_tol = 0.0;
    std::size_t sup_points = 0;
    auto* o_config = app.add_option("--config", config_path, "JSON run configuration; flags override it");
    auto* o_threads = app.add_option("--threads", threads, "worker threads (0: hardware concurrency)");
    auto* o_cache = app.add_option("--cache", cache_path, "distance cache file");
    auto* o_format = app.add_option("--format", format, "output format: json or csv");
    auto* o_seed = app.add_option("--seed", seed, "shuffle seed for the early-break Hausdorff scan");
    auto* o_tol = app.add_option("--abs-tol", abs_tol, "quadrature absolute tolerance");
    auto* o_sup = app.add_option("--sup-grid-points", sup_points, "points in the sup-norm scan on [-2, 2]");

    sample_args sample;
    std::string sample_grid;
    auto* sc_sample = app.add_subcommand("sample", "sample a unit ball of E2, S2 or H2 to a point cloud");
    sc_sample->add_option("space", sample.space, "e2, s2 or h2")->required();
    sc_sample->add_option("--grid", sample_grid, "radial x angular resolution, e.g. 100x100");
    sc_sample->add_option("--out", sample.out_path, "output file (.csv or .json); stdout if omitted");

    auto* sc_diagnose = app.add_subcommand("diagnose", "compute embedding constants and run the invariant suite");

    hausdorff_args haus;
    auto* sc_haus = app.add_subcommand("hausdorff", "Hausdorff distance between two CSV point clouds");
    sc_haus->add_option("cloud_a", haus.cloud_a)->required();
    sc_haus->add_option("cloud_b", haus.cloud_b)->required();
    sc_haus->add_option("--algo", haus.algo, "naive, earlybreak or tree")
        ->check(CLI::IsMember({"naive", "earlybreak", "tree"}));

    std::string pair_text = "e2h2", coarse, fine;
    std::size_t top_k = 0, offset_steps = 0;
    bool exhaustive = false;
    auto* sc_est = app.add_subcommand("estimate", "estimate a Gromov-Hausdorff distance between unit balls");
    sc_est->add_option("--pair", pair_text, "e2h2, s2h2 or e2s2");
    auto* o_coarse = sc_est->add_option("--coarse", coarse, "coarse resolution RxT");
    auto* o_fine = sc_est->add_option("--fine", fine, "fine resolution RxT");
    auto* o_topk = sc_est->add_option("--top-k", top_k, "candidates refined at the fine resolution");
    auto* o_steps = sc_est->add_option("--offset-steps", offset_steps, "offset values per axis");
    sc_est->add_flag("--exhaustive", exhaustive, "score every candidate at the fine resolution");

    table_args table;
    auto* sc_table = app.add_subcommand("table", "print the model-space distance table and edge weights");
    sc_table->add_flag("--default", table.use_default, "use the built-in table instead of the cache");

    auto* sc_graph = app.add_subcommand("graph", "build or search the product-manifold graph");
    sc_graph->require_subcommand(1);
    graph_build_args gb;
    auto* sc_build = sc_graph->add_subcommand("build", "build the graph and export it");
    sc_build->add_option("--max-factors", gb.max_factors, "largest number of factors per node");
    sc_build->add_option("--table", gb.table_path, "distance cache or table JSON");
    sc_build->add_option("--out", gb.out_path, "output file (.json or .dot); JSON on stdout if omitted");
    graph_search_args gs;
    auto* sc_search = sc_graph->add_subcommand("search", "search the graph for the lowest-valued node");
    sc_search->add_option("--graph", gs.graph_path, "graph JSON; built from --max-factors if omitted");
    sc_search->add_option("--max-factors", gs.max_factors, "largest number of factors when building");
    sc_search->add_option("--algo", gs.algo, "exhaustive, greedy or bestfirst")
        ->check(CLI::IsMember({"exhaustive", "greedy", "bestfirst"}));
    sc_search->add_option("--start", gs.start, "start node key, e.g. E2xH2");
    sc_search->add_option("--budget", gs.budget, "maximum evaluations for best-first");
    sc_search->add_option("--eval", gs.eval, "table:PATH, cmd:COMMAND or synthetic:NAME");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        run_config cfg = o_config->count() ? load_config(config_path) : run_config{};
        if (o_threads->count()) cfg.threads = threads;
        if (o_cache->count()) cfg.cache_path = cache_path;
        if (o_format->count()) cfg.format = parse_output_format(format);
        if (o_seed->count()) cfg.seed = seed;
        if (o_tol->count()) cfg.quadrature.abs_tol = abs_tol;
        if (o_sup->count()) cfg.sup_grid_points = sup_points;
        if (o_coarse->count()) cfg.grid.coarse = parse_resolution(coarse);
        if (o_fine->count()) cfg.grid.fine = parse_resolution(fine);
        if (o_topk->count()) cfg.grid.refine_top_k = top_k;
        if (o_steps->count()) cfg.grid.offset_steps = offset_steps;
        if (exhaustive) cfg.grid.exhaustive = true;
        validate(cfg);

        if (sc_sample->parsed()) {
            if (!sample_grid.empty()) sample.grid = parse_resolution(sample_grid);
            return cmd_sample(cfg, sample, out, err);
        }
        if (sc_diagnose->parsed()) return cmd_diagnose(cfg, out, err);
        if (sc_haus->parsed()) return cmd_hausdorff(cfg, haus, out, err);
        if (sc_est->parsed()) return cmd_estimate(cfg, {parse_gh_pair(pair_text)}, out, err);
        if (sc_table->parsed()) return cmd_table(cfg, table, out, err);
        if (sc_build->parsed()) return cmd_graph_build(cfg, gb, out, err);
        if (sc_search->parsed()) return cmd_graph_search(cfg, gs, out, err);
        err << app.help();
        return exit_usage;
    } catch (const error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_numerical;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"ghm"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ghm::cli
