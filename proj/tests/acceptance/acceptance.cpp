// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Set GHM_PAPER_SCALE=1 to also run and report the paper-scale estimates.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ghm/blanusa.hpp"
#include "ghm/evaluator.hpp"
#include "ghm/gh_estimate.hpp"
#include "ghm/hausdorff.hpp"
#include "ghm/latent_graph.hpp"
#include "ghm/serialization.hpp"
#include "ghm_cli/app.hpp"

using namespace ghm;

namespace {

struct outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

const blanusa::constants& consts() {
    static const blanusa::constants k = blanusa::compute_constants();
    return k;
}

candidate_grid_spec desk_grid() {
    candidate_grid_spec g;
    g.coarse = {30, 30};
    g.fine = {100, 100};
    g.refine_top_k = 50;
    g.offset_steps = 20;
    return g;
}

struct desk_run {
    gh_estimate e2h2, s2h2;
};

const desk_run& desk_estimates() {
    static const desk_run r{estimate_gh(gh_pair::e2_h2, desk_grid(), consts(), 1),
                            estimate_gh(gh_pair::s2_h2, desk_grid(), consts(), 1)};
    return r;
}

// ---------------------------------------------------------------------------

outcome criterion_1() {
    const auto& k = consts();
    double psi_err = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double x = -2.0 + 4.0 * i / 400.0;
        const double p1 = blanusa::psi1(x, k), p2 = blanusa::psi2(x, k);
        psi_err = std::max(psi_err, std::fabs(p1 * p1 + p2 * p2 - 1.0));
    }
    double h_err = 0.0;
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            const double x = -2.0 + 4.0 * i / 19.0, y = -2.0 + 4.0 * j / 19.0;
            double n2 = 0.0;
            for (double v : blanusa::h(x, y, k)) n2 += v * v;
            const double s = std::fabs(std::sinh(x));
            h_err = std::max(h_err, std::fabs(std::sqrt(n2) * k.c - s) / s);
        }
    }
    double origin = 0.0;
    for (double v : blanusa::f0(0.0, 0.0, k)) origin = std::max(origin, std::fabs(v));
    double anti = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        const double t = -2.0 + 4.0 * i / 4000.0;
        anti = std::max(anti, std::fabs(blanusa::chi(t + 1.0) + blanusa::chi(t)));
    }
    outcome o;
    o.pass = psi_err <= 1e-8 && h_err <= 1e-9 && origin <= 1e-10 && anti <= 1e-14;
    o.detail = "psi identity " + fmt("%.2e", psi_err) + ", |h|c rel " + fmt("%.2e", h_err) + ", |F(0,0)| " +
               fmt("%.1e", origin) + ", chi anti-periodicity " + fmt("%.1e", anti);
    return o;
}

outcome criterion_2() {
    const auto& k = consts();
    const double r1 = std::fabs(k.G1 - k.G1_coarse) / k.G1, r2 = std::fabs(k.G2 - k.G2_coarse) / k.G2;
    outcome o;
    o.pass = k.A > 0.0 && k.A < 0.3679 && k.epsilon > 0.25 && k.epsilon <= 0.5 && k.c == 2.0 * std::max(k.G1, k.G2) &&
             r1 <= 1e-4 && r2 <= 1e-4;
    o.detail = "A=" + fmt("%.8f", k.A) + " G1=" + fmt("%.6f", k.G1) + " G2=" + fmt("%.6f", k.G2) + " c=" +
               fmt("%.6f", k.c) + " eps=" + fmt("%.6f", k.epsilon) + " step-halving rel " +
               fmt("%.1e", std::max(r1, r2));
    return o;
}

outcome criterion_3() {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<std::size_t> dim_d(1, 6), n_d(1, 300);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto cloud = [&](std::size_t n, std::size_t dim, double shift) {
        std::vector<double> c(n * dim);
        for (auto& v : c) v = u(rng) + shift;
        return point_cloud(std::move(c), dim, chart::ambient);
    };
    double worst = 0.0;
    bool witnesses = true;
    for (int t = 0; t < 500; ++t) {
        const std::size_t dim = dim_d(rng);
        const auto a = cloud(n_d(rng), dim, 0.0);
        const auto b = cloud(n_d(rng), dim, 0.25 * u(rng));
        const auto naive = hausdorff_naive(a, b);
        const auto eb = hausdorff_earlybreak(a, b, static_cast<std::uint64_t>(t));
        const auto acc = hausdorff_accelerated(a, b, 1 + t % 2);
        worst = std::max({worst, std::fabs(eb.distance - naive.distance), std::fabs(acc.distance - naive.distance),
                          std::fabs(eb.direction_ab - naive.direction_ab),
                          std::fabs(acc.direction_ba - naive.direction_ba)});
        witnesses = witnesses && acc.witness_a == naive.witness_a && acc.witness_b == naive.witness_b;
    }
    double metric = 0.0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t dim = dim_d(rng);
        const auto a = cloud(n_d(rng), dim, 0.0), b = cloud(n_d(rng), dim, 0.3), c = cloud(n_d(rng), dim, -0.3);
        const double ab = hausdorff_accelerated(a, b).distance, ba = hausdorff_accelerated(b, a).distance;
        const double ac = hausdorff_accelerated(a, c).distance, cb = hausdorff_accelerated(c, b).distance;
        metric = std::max({metric, std::fabs(ab - ba), hausdorff_accelerated(a, a).distance, ab - ac - cb});
    }
    outcome o;
    o.pass = worst <= 1e-12 && metric <= 1e-12 && witnesses;
    o.detail = "500 pairs max |diff| " + fmt("%.1e", worst) + ", metric suite max violation " + fmt("%.1e", metric) +
               (witnesses ? "" : ", witness mismatch");
    return o;
}

outcome criterion_4() {
    const auto& r = desk_estimates();
    const bool eh = r.e2h2.value >= 0.69 && r.e2h2.value <= 0.85;
    const bool sh = r.s2h2.value >= 0.76 && r.s2h2.value <= 0.92;
    outcome o;
    o.pass = eh && sh;
    o.detail = "desk scale: d(E2,H2)=" + fmt("%.4f", r.e2h2.value) + (eh ? " in" : " outside") +
               " [0.69, 0.85], d(S2,H2)=" + fmt("%.4f", r.s2h2.value) + (sh ? " in" : " outside") + " [0.76, 0.92]";
    return o;
}

outcome criterion_5() {
    outcome o;
    std::ostringstream d;
    for (const auto* e : {&desk_estimates().e2h2, &desk_estimates().s2h2}) {
        const auto sp = pair_spaces(e->pair);
        const double bound =
            diameter_bound(sample_ball(sp[0], e->source_spec), sample_ball(sp[1], e->target_spec));
        const bool ok = e->value >= 0.0 && e->value <= 1.0 && e->value <= bound;
        o.pass = o.pass && ok;
        d << to_string(e->pair) << " " << fmt("%.4f", e->value) << " <= min(1, " << fmt("%.4f", bound) << ")"
          << (ok ? "" : " VIOLATED") << "; ";
    }
    o.detail = d.str();
    return o;
}

outcome criterion_6() {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> off(-0.5, 0.5);
    std::uniform_int_distribution<int> axis(0, 5);
    candidate_grid_spec g;
    g.offset_steps = 5;
    int violations = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const gh_pair pair = trial % 2 ? gh_pair::s2_h2 : gh_pair::e2_h2;
        auto clouds = pipeline_clouds(pair, {20, 20}, consts());
        const candidate_scorer scorer(clouds[0], clouds[1]);
        auto cands = candidates_for(pair, g);
        const double before = best_candidate(scorer, cands).value;
        const auto family = pair == gh_pair::e2_h2 ? embedding_family::euclidean_plane : embedding_family::sphere_triple;
        for (int i = 0; i < 1000; ++i) {
            embedding_candidate c;
            c.family = family;
            std::array<int, 6> perm{0, 1, 2, 3, 4, 5};
            std::shuffle(perm.begin(), perm.end(), rng);
            c.axes = {perm[0], perm[1], perm[2]};
            c.negate = family == embedding_family::sphere_triple && rng() % 2;
            c.offset_axis = axis(rng);
            c.offset_value = off(rng);
            cands.push_back(c);
        }
        const double after = best_candidate(scorer, cands).value;
        if (after > before) ++violations;
    }
    outcome o;
    o.pass = violations == 0;
    o.detail = "20 trials x 1000 extra candidates, increases: " + std::to_string(violations);
    return o;
}

outcome criterion_7() {
    const auto t = distance_table::defaults();
    const auto g1 = build_graph(1, t);
    std::vector<double> w;
    for (const auto& e : g1.edges()) w.push_back(e.weight);
    std::sort(w.begin(), w.end());
    const std::vector<double> expect{1.1905, 1.2987, 4.3478};
    bool weights_ok = g1.nodes().size() == 3 && w.size() == 3;
    for (std::size_t i = 0; weights_ok && i < 3; ++i) weights_ok = std::fabs(w[i] - expect[i]) <= 1e-4;

    // Brute-force adjacency over count vectors.
    const auto g2 = build_graph(2, t);
    std::set<std::pair<std::string, std::string>> brute;
    std::vector<std::array<int, 3>> nodes;
    for (int e = 0; e <= 2; ++e)
        for (int s = 0; s <= 2; ++s)
            for (int h = 0; h <= 2; ++h)
                if (e + s + h >= 1 && e + s + h <= 2) nodes.push_back({e, s, h});
    auto key = [](const std::array<int, 3>& c) {
        std::vector<model_space> f;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < c[i]; ++k) f.push_back(all_model_spaces[i]);
        return product_signature(f).canonical_key();
    };
    std::size_t swap_edges_2 = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            const auto& a = nodes[i];
            const auto& b = nodes[j];
            const int na = a[0] + a[1] + a[2], nb = b[0] + b[1] + b[2];
            int l1 = 0, contained = 1;
            for (int k = 0; k < 3; ++k) {
                l1 += std::abs(a[k] - b[k]);
                if ((na < nb && a[k] > b[k]) || (nb < na && b[k] > a[k])) contained = 0;
            }
            const bool adj = (na == nb && l1 == 2) || (std::abs(na - nb) == 1 && contained);
            if (!adj) continue;
            auto ka = key(a), kb = key(b);
            if (kb < ka) std::swap(ka, kb);
            brute.insert({ka, kb});
            if (na == 2 && nb == 2) ++swap_edges_2;
        }
    }
    std::set<std::pair<std::string, std::string>> built;
    std::set<double> distinct;
    for (const auto& e : g2.edges()) {
        auto ka = g2.nodes()[e.u].canonical_key(), kb = g2.nodes()[e.v].canonical_key();
        if (kb < ka) std::swap(ka, kb);
        built.insert({ka, kb});
        distinct.insert(e.weight);
    }
    bool distinct_ok = distinct.size() == 4;
    for (std::size_t m = 3; m <= 7; ++m) {
        std::set<double> d;
        const auto gm = build_graph(m, t);
        for (const auto& e : gm.edges()) d.insert(e.weight);
        distinct_ok = distinct_ok && d.size() == 4;
    }
    const std::size_t n7 = build_graph(7, t).nodes().size();

    const bool oracle_ok = built == brute;
    outcome o;
    o.pass = weights_ok && g1.edges().size() == 3 && g2.nodes().size() == 9 && g2.edges().size() == 21 &&
             oracle_ok && swap_edges_2 == 9 && distinct_ok && n7 == 119;
    o.detail = "weights {" + fmt("%.4f", w[0]) + ", " + fmt("%.4f", w[1]) + ", " + fmt("%.4f", w[2]) +
               "} (published 1.20 vs computed 1.19 for S2-H2), m=2: " + std::to_string(g2.nodes().size()) +
               " nodes/" + std::to_string(g2.edges().size()) + " edges" + (oracle_ok ? " (matches brute-force oracle)" : " (DIFFERS from brute-force oracle)") +
               (weights_ok ? "" : ", weight check failed") + (distinct_ok ? "" : ", distinct-weight check failed") + ", 2-factor swaps " +
               std::to_string(swap_edges_2) + ", distinct weights " + std::to_string(distinct.size()) +
               ", m=7: " + std::to_string(n7) + " nodes";
    return o;
}

struct search_outputs {
    std::vector<std::string> json;
};

// Runs the criterion-8 workload; fills `out` with serialized results for the determinism check.
outcome criterion_8_with(unsigned threads, search_outputs* out) {
    const auto dir = std::filesystem::temp_directory_path() / "ghm_acceptance_tables";
    std::filesystem::create_directories(dir);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int exhaustive_bad = 0, greedy_bad = 0, bestfirst_bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 1 + trial % 3;
        const auto g = build_graph(m, distance_table::defaults());
        const auto path = dir / ("values_" + std::to_string(trial) + ".csv");
        std::map<std::string, double> values;
        {
            std::ofstream f(path);
            f << "canonical_key,value\n";
            for (const auto& n : g.nodes()) {
                const double v = std::round(u(rng) * 1000.0) / 1000.0;
                values[n.canonical_key()] = v;
                f << n.canonical_key() << ',' << v << '\n';
            }
        }
        const auto ev = table_evaluator::from_csv(path);
        std::size_t argmin = 0;
        for (std::size_t i = 0; i < g.nodes().size(); ++i)
            if (values[g.nodes()[i].canonical_key()] < values[g.nodes()[argmin].canonical_key()]) argmin = i;

        const auto ex = search_exhaustive(g, ev, threads);
        if (!(ex.best_node == g.nodes()[argmin])) ++exhaustive_bad;
        const auto& start = g.nodes()[rng() % g.nodes().size()];
        const auto gr = search_greedy(g, ev, start);
        if (gr.best_value < ex.best_value) ++greedy_bad;
        const auto comp = g.component_of(g.index_of(start));
        double comp_min = INFINITY;
        for (std::size_t i : comp) comp_min = std::min(comp_min, values[g.nodes()[i].canonical_key()]);
        const auto bf = search_best_first(g, ev, start, g.nodes().size() + trial % 3);
        if (bf.best_value != comp_min) ++bestfirst_bad;
        if (out) {
            out->json.push_back(to_json(ex).dump());
            out->json.push_back(to_json(gr).dump());
            out->json.push_back(to_json(bf).dump());
        }
        std::filesystem::remove(path);
    }
    outcome o;
    o.pass = exhaustive_bad == 0 && greedy_bad == 0 && bestfirst_bad == 0;
    o.detail = "100 table-file evaluators: exhaustive misses " + std::to_string(exhaustive_bad) +
               ", greedy below exhaustive " + std::to_string(greedy_bad) + ", best-first mismatches " +
               std::to_string(bestfirst_bad);
    return o;
}

outcome criterion_8() { return criterion_8_with(1, nullptr); }

outcome criterion_9() {
    const auto& r1 = desk_estimates();
    const auto e8 = estimate_gh(gh_pair::e2_h2, desk_grid(), consts(), 8);
    const auto s8 = estimate_gh(gh_pair::s2_h2, desk_grid(), consts(), 8);
    const bool est_same = to_json(r1.e2h2).dump() == to_json(e8).dump() && to_json(r1.s2h2).dump() == to_json(s8).dump();
    search_outputs a, b;
    criterion_8_with(1, &a);
    criterion_8_with(8, &b);
    const bool search_same = a.json == b.json;
    outcome o;
    o.pass = est_same && search_same;
    o.detail = std::string("estimates ") + (est_same ? "identical" : "DIFFER") + ", searches " +
               (search_same ? "identical" : "DIFFER") + " at 1 vs 8 threads";
    return o;
}

outcome criterion_10() {
    const auto cache = std::filesystem::temp_directory_path() / "ghm_acceptance_cache.json";
    std::filesystem::remove(cache);
    std::ostringstream out, err;
    const int code = cli::run({"--cache", cache.string(), "diagnose"}, out, err);
    std::filesystem::remove(cache);
    outcome o;
    try {
        const auto j = json::parse(out.str());
        const auto& dev = j.at("pullback_deviations");
        bool finite = dev.size() == 25;
        double worst = 0.0;
        for (const auto& d : dev) {
            const double v = d.at("deviation").get<double>();
            finite = finite && std::isfinite(v);
            worst = std::max(worst, v);
        }
        for (const char* k : {"A", "G1", "G2", "c", "epsilon"}) finite = finite && std::isfinite(j.at(k).get<double>());
        o.pass = code == 0 && finite;
        o.detail = "exit " + std::to_string(code) + ", " + std::to_string(dev.size()) +
                   " pullback deviations, max " + fmt("%.4e", worst);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("diagnose output unusable: ") + e.what();
    }
    return o;
}

void paper_scale_report() {
    candidate_grid_spec g;
    g.coarse = {30, 30};
    g.fine = {100, 100};
    g.offset_steps = 100;
    g.refine_top_k = 200;
    for (auto [pair, target] : {std::pair{gh_pair::e2_h2, 0.77}, std::pair{gh_pair::s2_h2, 0.84}}) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto e = estimate_gh(pair, g, consts(), 0);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("INFO paper scale %s: value %.4f, target %.2f +/- 0.05 (%s), %.1f s\n",
                    std::string(to_string(pair)).c_str(), e.value, target,
                    std::fabs(e.value - target) <= 0.05 ? "within" : "outside", secs);
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<outcome()>>> criteria{
        {"Blanusa invariant suite", criterion_1},
        {"constants sanity", criterion_2},
        {"Hausdorff oracle equivalence", criterion_3},
        {"published distance bands", criterion_4},
        {"unit-ball bounds on estimates", criterion_5},
        {"min-monotonicity under extra candidates", criterion_6},
        {"graph structure", criterion_7},
        {"search correctness", criterion_8},
        {"determinism across thread counts", criterion_9},
        {"pullback diagnostic report", criterion_10},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failures;
        std::printf("%s criterion %zu (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    const char* paper = std::getenv("GHM_PAPER_SCALE");
    if (paper && std::string(paper) == "1") paper_scale_report();
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
