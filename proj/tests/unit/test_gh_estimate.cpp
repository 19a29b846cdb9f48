#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <tuple>

#include "ghm/error.hpp"
#include "ghm/gh_estimate.hpp"
#include "ghm/hausdorff.hpp"

using namespace ghm;

namespace {

const blanusa::constants& consts() {
    static const blanusa::constants k = blanusa::compute_constants();
    return k;
}

candidate_grid_spec tiny_grid() {
    candidate_grid_spec g;
    g.offset_steps = 3;
    g.coarse = {5, 6};
    g.fine = {7, 8};
    g.refine_top_k = 7;
    return g;
}

}  // namespace

TEST_CASE("offset values span the range inclusively") {
    candidate_grid_spec g;
    g.offset_steps = 5;
    CHECK(offset_values(g) == std::vector<double>{-0.5, -0.25, 0.0, 0.25, 0.5});
    g.offset_steps = 1;
    CHECK(offset_values(g) == std::vector<double>{-0.5});
    g.offset_steps = 100;
    const auto v = offset_values(g);
    CHECK(v.size() == 100);
    CHECK(v.front() == -0.5);
    CHECK(v.back() == 0.5);
}

TEST_CASE("candidate family sizes") {
    candidate_grid_spec g;
    g.offset_steps = 100;  // zero not on the grid
    CHECK(enumerate_euclidean_candidates(g).size() == 30 * (1 + 6 * 100));
    CHECK(enumerate_sphere_candidates(g).size() == 240 * (1 + 6 * 100));
    g.offset_steps = 21;  // zero on the grid collapses into the zero-offset candidate
    CHECK(enumerate_euclidean_candidates(g).size() == 30 * (1 + 6 * 20));
    CHECK(enumerate_sphere_candidates(g).size() == 240 * (1 + 6 * 20));
    g.offset_axes = {2};
    g.offset_steps = 4;
    CHECK(enumerate_euclidean_candidates(g).size() == 30 * 5);

    const auto all = enumerate_sphere_candidates(tiny_grid());
    std::set<std::tuple<int, int, int, bool, int, double>> seen;
    for (const auto& c : all) {
        CHECK_NOTHROW(validate(c));
        seen.insert({c.axes[0], c.axes[1], c.axes[2], c.negate, c.offset_axis, c.offset_value});
    }
    CHECK(seen.size() == all.size());
}

TEST_CASE("candidate validation") {
    CHECK_THROWS_AS(validate(embedding_candidate{embedding_family::euclidean_plane, {0, 0, 0}, false, 0, 0.0}),
                    parameter_error);
    CHECK_THROWS_AS(validate(embedding_candidate{embedding_family::euclidean_plane, {0, 6, 0}, false, 0, 0.0}),
                    parameter_error);
    CHECK_THROWS_AS(validate(embedding_candidate{embedding_family::euclidean_plane, {0, 1, 0}, true, 0, 0.0}),
                    parameter_error);
    CHECK_NOTHROW(validate(embedding_candidate{embedding_family::sphere_triple, {5, 3, 1}, true, 2, 0.5}));
    candidate_grid_spec g;
    g.refine_top_k = 0;
    CHECK_THROWS_AS(validate(g), parameter_error);
}

TEST_CASE("apply_candidate places, negates and offsets") {
    const auto s = point_cloud::from_rows({{0.1, 0.2, 0.3}}, chart::extrinsic_sphere);
    const embedding_candidate c{embedding_family::sphere_triple, {4, 0, 2}, true, 2, 0.25};
    const auto p = apply_candidate(c, s);
    CHECK(p.dim() == 6);
    const std::vector<double> expect{-0.2, 0.0, -0.3 + 0.25, 0.0, -0.1, 0.0};
    for (int i = 0; i < 6; ++i) CHECK(p.row(0)[i] == doctest::Approx(expect[i]));
    CHECK_THROWS_AS(apply_candidate(embedding_candidate{}, s), parameter_error);
}

TEST_CASE("scorer equals the naive Hausdorff distance of the placed cloud") {
    for (gh_pair pair : {gh_pair::e2_h2, gh_pair::s2_h2, gh_pair::e2_s2}) {
        auto clouds = pipeline_clouds(pair, {6, 7}, consts());
        const candidate_scorer scorer(clouds[0], clouds[1]);
        const auto cands = candidates_for(pair, tiny_grid());
        std::mt19937_64 rng(static_cast<unsigned>(pair));
        std::uniform_int_distribution<std::size_t> pick(0, cands.size() - 1);
        for (int t = 0; t < 40; ++t) {
            const auto& c = cands[pick(rng)];
            const double exact = hausdorff_naive(apply_candidate(c, clouds[0]), clouds[1]).distance;
            CHECK(std::fabs(scorer.score(c) - exact) <= 1e-12);
            const double cut = 0.5 * exact;
            CHECK(scorer.score(c, cut) > cut);
            CHECK(std::fabs(scorer.score(c, 2.0 * exact) - exact) <= 1e-12);
        }
    }
}

TEST_CASE("top-k is exact and independent of the thread count") {
    auto clouds = pipeline_clouds(gh_pair::s2_h2, {6, 6}, consts());
    const candidate_scorer scorer(clouds[0], clouds[1]);
    const auto cands = candidates_for(gh_pair::s2_h2, tiny_grid());
    std::vector<ranked_candidate> brute;
    for (std::size_t i = 0; i < cands.size(); ++i) brute.push_back({scorer.score(cands[i]), i});
    std::sort(brute.begin(), brute.end());
    brute.resize(10);
    const auto t1 = top_k_candidates(scorer, cands, 10, 1);
    const auto t3 = top_k_candidates(scorer, cands, 10, 3);
    CHECK(t1 == brute);
    CHECK(t3 == brute);
    CHECK(best_candidate(scorer, cands, 2) == brute.front());
}

TEST_CASE("exhaustive estimate equals the brute-force minimum") {
    auto g = tiny_grid();
    g.exhaustive = true;
    const auto e = estimate_gh(gh_pair::e2_h2, g, consts(), 1);
    auto clouds = pipeline_clouds(gh_pair::e2_h2, g.fine, consts());
    const auto cands = candidates_for(gh_pair::e2_h2, g);
    double best = INFINITY;
    for (const auto& c : cands) best = std::min(best, hausdorff_naive(apply_candidate(c, clouds[0]), clouds[1]).distance);
    CHECK(std::fabs(e.raw_value - best) <= 1e-12);
    CHECK(e.value == std::min(best, 1.0));
    CHECK(e.candidates_evaluated == cands.size());
    CHECK(e.exhaustive);
}

TEST_CASE("two-phase estimate is deterministic, bounded and never below the exhaustive minimum") {
    const auto g = tiny_grid();
    for (gh_pair pair : {gh_pair::e2_h2, gh_pair::s2_h2}) {
        const auto a = estimate_gh(pair, g, consts(), 1);
        const auto b = estimate_gh(pair, g, consts(), 4);
        CHECK(a.raw_value == b.raw_value);
        CHECK(a.best_candidate == b.best_candidate);
        CHECK(a.coarse_value == b.coarse_value);
        CHECK(a.value >= 0.0);
        CHECK(a.value <= 1.0);
        auto ge = g;
        ge.exhaustive = true;
        CHECK(estimate_gh(pair, ge, consts(), 1).raw_value <= a.raw_value);
        CHECK(a.source_spec.n_radial == g.fine.n_radial);
        CHECK(a.target_spec.r_max == 0.97);
    }
}

TEST_CASE("pair names") {
    CHECK(parse_gh_pair("e2h2") == gh_pair::e2_h2);
    CHECK(to_string(gh_pair::s2_h2) == "s2h2");
    CHECK_THROWS_AS(parse_gh_pair("h2h2"), parameter_error);
    CHECK(pair_spaces(gh_pair::e2_s2)[1] == model_space::s2());
}

TEST_CASE("diameter bound and table assembly") {
    const auto e = sample_euclidean_ball(default_euclidean_spec(10, 10));
    const auto h = sample_hyperbolic_ball(default_hyperbolic_spec(10, 10));
    CHECK(diameter_bound(e, h) == doctest::Approx(2.0));

    gh_estimate eh;
    eh.pair = gh_pair::e2_h2;
    eh.value = 0.5;
    gh_estimate es;
    es.pair = gh_pair::e2_s2;
    es.value = 0.9;
    const std::vector<gh_estimate> ests{eh, es};
    const auto t = build_distance_table(ests);
    CHECK(t.get(model_space::e2(), model_space::h2()) == 0.5);
    CHECK(t.entry(model_space::e2(), model_space::h2()).source == provenance::computed);
    CHECK(t.get(model_space::e2(), model_space::s2()) == 0.23);
    CHECK(t.get(model_space::s2(), model_space::h2()) == 0.84);
}

TEST_CASE("degenerate zero-offset grid collapses to one candidate per axis pair") {
    candidate_grid_spec g;
    g.offset_steps = 1;
    g.offset_axes = {0};
    g.offset_lo = g.offset_hi = 0.0;
    const auto c = enumerate_euclidean_candidates(g);
    CHECK(c.size() == 30);
    for (const auto& e : c) CHECK(e.offset_value == 0.0);
}

TEST_CASE("sphere triple on the last three axes with a flip and a first-axis offset") {
    const auto s = point_cloud::from_rows({{0.3, -0.4, 0.5}}, chart::extrinsic_sphere);
    const embedding_candidate c{embedding_family::sphere_triple, {3, 4, 5}, true, 0, 0.5};
    const auto p = apply_candidate(c, s);
    const std::vector<double> expect{0.5, 0.0, 0.0, -0.3, 0.4, -0.5};
    for (int i = 0; i < 6; ++i) CHECK(p.row(0)[i] == expect[i]);
}

TEST_CASE("apply_candidate preserves pairwise distances") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<std::vector<double>> rows(200, std::vector<double>(3));
    for (auto& r : rows)
        for (auto& v : r) v = n(rng);
    const auto cloud = point_cloud::from_rows(rows, chart::ambient);
    const auto cands = enumerate_sphere_candidates(tiny_grid());
    for (int t = 0; t < 20; ++t) {
        const auto& c = cands[rng() % cands.size()];
        const auto placed = apply_candidate(c, cloud);
        for (int k = 0; k < 100; ++k) {
            const std::size_t i = 2 * k, j = 2 * k + 1;
            const double before = std::sqrt(squared_distance(cloud.row(i).data(), cloud.row(j).data(), 3));
            const double after = std::sqrt(squared_distance(placed.row(i).data(), placed.row(j).data(), 6));
            CHECK(std::fabs(before - after) <= 1e-12);
        }
    }
}
