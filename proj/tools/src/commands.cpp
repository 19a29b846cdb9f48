#include "ghm_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "ghm/cloud_io.hpp"
#include "ghm/error.hpp"
#include "ghm/evaluator.hpp"
#include "ghm/latent_graph.hpp"
#include "ghm_cli/app.hpp"
#include "ghm_cli/cache.hpp"

namespace ghm::cli {

using ghm::to_json;

namespace {

constexpr double psi_identity_tol = 1e-8;
constexpr double h_norm_rel_tol = 1e-9;
constexpr double origin_tol = 1e-10;
constexpr double pullback_step = 1e-4;

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

bool has_extension(const std::string& path, const char* ext) {
    return std::filesystem::path(path).extension() == ext;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw io_error("cannot open " + path + " for writing");
    f << text;
    if (!f) throw io_error("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

// Constants from the cache when the quadrature settings match, else computed
// and stored in `cache`. Returns whether the cache was updated.
bool obtain_constants(const run_config& cfg, distance_cache& cache, blanusa::constants& k, std::ostream& err) {
    const auto digest = constants_digest(cfg);
    if (cache.constants && cache.constants_digest == digest) {
        k = *cache.constants;
        return false;
    }
    k = blanusa::compute_constants(cfg.quadrature, cfg.sup_grid_points);
    if (!k.sup_scan_stable) err << "warning: sup-norm scan not stable to 1e-4 under step halving\n";
    cache.constants = k;
    cache.constants_digest = digest;
    return true;
}

std::string two_decimals(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

int cmd_sample(const run_config& cfg, const sample_args& a, std::ostream& out, std::ostream& err) {
    const auto space = model_space::parse(a.space);
    sampling_spec spec;
    switch (space.kind()) {
    case space_kind::euclidean: spec = default_euclidean_spec(a.grid.n_radial, a.grid.n_angular); break;
    case space_kind::spherical: spec = default_sphere_spec(a.grid.n_radial, a.grid.n_angular); break;
    case space_kind::hyperbolic: spec = default_hyperbolic_spec(a.grid.n_radial, a.grid.n_angular); break;
    }
    const auto cloud = sample_ball(space, spec);
    const bool as_json = a.out_path.empty() ? cfg.format == output_format::json : has_extension(a.out_path, ".json");
    if (a.out_path.empty()) {
        if (as_json) out << cloud_to_json(cloud) << '\n';
        else write_cloud_csv(out, cloud);
    } else {
        if (as_json) write_text_file(a.out_path, cloud_to_json(cloud) + "\n");
        else save_cloud_csv(a.out_path, cloud);
        const json summary = {{"space", space.key()},
                              {"points", cloud.size()},
                              {"chart", to_string(cloud.chart())},
                              {"dim", cloud.dim()},
                              {"spec", to_json(spec)},
                              {"out", a.out_path}};
        out << summary.dump() << '\n';
    }
    err << "sampled " << cloud.size() << " points of " << space.key() << " (chart " << to_string(cloud.chart())
        << ")\n";
    return exit_ok;
}

json diagnose_report(const blanusa::constants& k, bool& hard_pass) {
    double psi_err = 0.0;
    for (double x : linspace(-2.0, 2.0, 401)) {
        const double p1 = blanusa::psi1(x, k), p2 = blanusa::psi2(x, k);
        psi_err = std::max(psi_err, std::fabs(p1 * p1 + p2 * p2 - 1.0));
    }

    double h_err = 0.0;
    const auto grid20 = linspace(-2.0, 2.0, 20);
    for (double x : grid20) {
        for (double y : grid20) {
            const auto hv = blanusa::h(x, y, k);
            double n2 = 0.0;
            for (double v : hv) n2 += v * v;
            const double lhs = std::sqrt(n2) * k.c, rhs = std::fabs(std::sinh(x));
            h_err = std::max(h_err, std::fabs(lhs - rhs) / std::max(rhs, 1e-300));
        }
    }

    double origin_err = 0.0;
    for (double v : blanusa::f0(0.0, 0.0, k)) origin_err = std::max(origin_err, std::fabs(v));

    double chi_err = 0.0;
    for (double t : linspace(-2.0, 2.0, 4001)) chi_err = std::max(chi_err, std::fabs(blanusa::chi(t + 1.0) + blanusa::chi(t)));

    json pullback = json::array();
    double max_dev = 0.0;
    bool pullback_finite = true;
    const auto grid5 = linspace(-0.5, 0.5, 5);
    for (double x : grid5) {
        for (double y : grid5) {
            const auto r = blanusa::pullback_metric_diagnostic(x, y, pullback_step, k);
            pullback_finite = pullback_finite && std::isfinite(r.deviation);
            max_dev = std::max(max_dev, r.deviation);
            pullback.push_back(to_json(r));
        }
    }

    const bool psi_ok = psi_err <= psi_identity_tol;
    const bool h_ok = h_err <= h_norm_rel_tol;
    const bool origin_ok = origin_err <= origin_tol;
    hard_pass = psi_ok && h_ok && origin_ok;

    return {{"A", k.A},
            {"G1", k.G1},
            {"G2", k.G2},
            {"c", k.c},
            {"epsilon", k.epsilon},
            {"epsilon_in_range", k.epsilon > 0.25 && k.epsilon <= 0.5},
            {"sup_scan_stable", k.sup_scan_stable},
            {"quadrature", to_json(k.quadrature)},
            {"psi_identity_max_error", psi_err},
            {"h_norm_max_rel_error", h_err},
            {"f0_origin_max_abs", origin_err},
            {"chi_antiperiodicity_max_error", chi_err},
            {"pullback_step", pullback_step},
            {"pullback_max_deviation", max_dev},
            {"pullback_finite", pullback_finite},
            {"pullback_deviations", pullback},
            {"invariants",
             {{"psi_identity", psi_ok}, {"h_norm", h_ok}, {"f0_origin", origin_ok}, {"hard_pass", hard_pass}}}};
}

int cmd_diagnose(const run_config& cfg, std::ostream& out, std::ostream& err) {
    auto cache = load_cache(cfg.cache_path);
    blanusa::constants k;
    if (obtain_constants(cfg, cache, k, err)) save_cache(cfg.cache_path, cache);
    bool pass = false;
    const json report = diagnose_report(k, pass);
    out << report.dump(2) << '\n';
    if (!pass) err << "hard invariants failed\n";
    return pass ? exit_ok : exit_numerical;
}

hausdorff_result run_hausdorff(const point_cloud& a, const point_cloud& b, const std::string& algo,
                               const run_config& cfg) {
    if (algo == "naive") return hausdorff_naive(a, b);
    if (algo == "earlybreak") return hausdorff_earlybreak(a, b, cfg.seed);
    if (algo == "tree") return hausdorff_accelerated(a, b, cfg.threads);
    throw parameter_error("unknown Hausdorff algorithm '" + algo + "' (expected naive, earlybreak or tree)");
}

int cmd_hausdorff(const run_config& cfg, const hausdorff_args& a, std::ostream& out, std::ostream&) {
    const auto ca = load_cloud_csv(a.cloud_a);
    const auto cb = load_cloud_csv(a.cloud_b);
    const auto r = run_hausdorff(ca, cb, a.algo, cfg);
    if (cfg.format == output_format::csv) {
        out << "distance,witness_a,witness_b,direction_ab,direction_ba\n";
        char buf[160];
        std::snprintf(buf, sizeof buf, "%.17g,%zu,%zu,%.17g,%.17g\n", r.distance, r.witness_a, r.witness_b,
                      r.direction_ab, r.direction_ba);
        out << buf;
    } else {
        json j = to_json(r);
        j["algo"] = a.algo;
        out << j.dump(2) << '\n';
    }
    return exit_ok;
}

int cmd_estimate(const run_config& cfg, const estimate_args& a, std::ostream& out, std::ostream& err) {
    auto cache = load_cache(cfg.cache_path);
    blanusa::constants k;
    bool dirty = obtain_constants(cfg, cache, k, err);
    const auto digest = estimate_digest(cfg, a.pair);

    gh_estimate e;
    const bool hit = cache.find_estimate(digest, a.pair) != nullptr;
    if (hit) {
        e = *cache.find_estimate(digest, a.pair);
        err << "estimate " << to_string(a.pair) << " served from cache " << cfg.cache_path.string() << '\n';
    } else {
        e = estimate_gh(a.pair, cfg.grid, k, cfg.threads);
        cache.store_estimate(digest, e);
        if (a.pair != gh_pair::e2_s2) {
            const auto sp = pair_spaces(a.pair);
            cache.table.set(sp[0], sp[1], e.value, provenance::computed);
        }
        dirty = true;
    }
    if (dirty) save_cache(cfg.cache_path, cache);

    if (cfg.format == output_format::csv) {
        out << "pair,value,raw_value,coarse_value,candidates_evaluated,exhaustive,cache\n";
        char buf[200];
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%zu,%s,%s\n", std::string(to_string(e.pair)).c_str(),
                      e.value, e.raw_value, e.coarse_value, e.candidates_evaluated, e.exhaustive ? "true" : "false",
                      hit ? "hit" : "miss");
        out << buf;
    } else {
        json j = to_json(e);
        j["cache"] = {{"status", hit ? "hit" : "miss"}, {"path", cfg.cache_path.string()}, {"digest", digest}};
        out << j.dump(2) << '\n';
    }
    return exit_ok;
}

int cmd_table(const run_config& cfg, const table_args& a, std::ostream& out, std::ostream&) {
    std::string source = "default";
    distance_table table = distance_table::defaults();
    if (!a.use_default && std::filesystem::exists(cfg.cache_path)) {
        table = load_cache(cfg.cache_path).table;
        source = "cache:" + cfg.cache_path.string();
    }

    struct row {
        const char* label;
        model_space a, b;
        double published_distance, published_weight;
    };
    const row rows[] = {{"E2-S2", model_space::e2(), model_space::s2(), published_gh_e2_s2, 4.35},
                        {"E2-H2", model_space::e2(), model_space::h2(), published_gh_e2_h2, 1.30},
                        {"S2-H2", model_space::s2(), model_space::h2(), published_gh_s2_h2, 1.20}};

    json jrows = json::array();
    json notes = json::array();
    std::string csv = "pair,distance,published_distance,provenance,weight,published_weight,weight_2dp,matches_published\n";
    for (const auto& r : rows) {
        const auto& entry = table.entry(r.a, r.b);
        const double w = entry.value > 0.0 ? 1.0 / entry.value : std::numeric_limits<double>::infinity();
        const std::string w2 = two_decimals(w);
        const bool match = w2 == two_decimals(r.published_weight);
        if (!match)
            notes.push_back(std::string(r.label) + ": 1/" + two_decimals(entry.value) + " = " + w2 +
                            " to two decimals; published weight " + two_decimals(r.published_weight));
        jrows.push_back({{"pair", r.label},
                         {"distance", entry.value},
                         {"published_distance", r.published_distance},
                         {"provenance", to_string(entry.source)},
                         {"weight", w},
                         {"published_weight", r.published_weight},
                         {"weight_2dp", w2},
                         {"matches_published", match}});
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.2f,%s,%.17g,%.2f,%s,%s\n", r.label, entry.value,
                      r.published_distance, std::string(to_string(entry.source)).c_str(), w, r.published_weight,
                      w2.c_str(), match ? "true" : "false");
        csv += buf;
    }
    csv += "extension,1,1.00,analytic-constant,1,1.00,1.00,true\n";

    if (cfg.format == output_format::csv) {
        out << csv;
    } else {
        const json j = {{"source", source},
                        {"rows", jrows},
                        {"extension", {{"distance", 1.0}, {"weight", 1.0}, {"published_weight", 1.0}}},
                        {"notes", notes}};
        out << j.dump(2) << '\n';
    }
    return exit_ok;
}

int cmd_graph_build(const run_config&, const graph_build_args& a, std::ostream& out, std::ostream& err) {
    const auto table = a.table_path.empty() ? distance_table::defaults() : load_table_file(a.table_path);
    const auto g = build_graph(a.max_factors, table);
    if (a.out_path.empty()) {
        out << export_graph(g, graph_format::json) << '\n';
    } else {
        const auto format = has_extension(a.out_path, ".dot") ? graph_format::dot : graph_format::json;
        write_text_file(a.out_path, export_graph(g, format) + "\n");
        const json summary = {{"max_factors", a.max_factors},
                              {"nodes", g.nodes().size()},
                              {"edges", g.edges().size()},
                              {"format", format == graph_format::dot ? "dot" : "json"},
                              {"out", a.out_path}};
        out << summary.dump() << '\n';
    }
    err << "graph: " << g.nodes().size() << " nodes, " << g.edges().size() << " edges\n";
    return exit_ok;
}

int cmd_graph_search(const run_config& cfg, const graph_search_args& a, std::ostream& out, std::ostream&) {
    const auto g = a.graph_path.empty() ? build_graph(a.max_factors, distance_table::defaults())
                                        : import_graph_json(read_text_file(a.graph_path));
    const auto eval = make_evaluator(a.eval);
    const auto start = a.start.empty() ? g.nodes().front() : product_signature::parse(a.start);
    const std::size_t budget = a.budget.value_or(g.nodes().size());

    search_result r;
    if (a.algo == "exhaustive") r = search_exhaustive(g, *eval, cfg.threads);
    else if (a.algo == "greedy") r = search_greedy(g, *eval, start);
    else if (a.algo == "bestfirst") r = search_best_first(g, *eval, start, budget);
    else throw parameter_error("unknown search algorithm '" + a.algo + "' (expected exhaustive, greedy or bestfirst)");

    json j = to_json(r);
    j["algo"] = a.algo;
    j["evaluator"] = eval->describe();
    out << j.dump(2) << '\n';
    return exit_ok;
}

}  // namespace ghm::cli
