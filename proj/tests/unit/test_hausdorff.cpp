#include <doctest.h>

#include <cmath>
#include <random>

#include "ghm/error.hpp"
#include "ghm/hausdorff.hpp"
#include "ghm/kd_tree.hpp"

using namespace ghm;

namespace {

point_cloud random_cloud(std::mt19937_64& rng, std::size_t n, std::size_t dim, double shift = 0.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c(n * dim);
    for (auto& v : c) v = u(rng) + shift;
    return point_cloud(std::move(c), dim, chart::ambient);
}

// Direct transcription of max over a of min over b, independent of the library.
double oracle_directed(const point_cloud& a, const point_cloud& b) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double m = INFINITY;
        for (std::size_t j = 0; j < b.size(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.dim(); ++k) s += std::pow(a.row(i)[k] - b.row(j)[k], 2);
            m = std::min(m, std::sqrt(s));
        }
        best = std::max(best, m);
    }
    return best;
}

}  // namespace

TEST_CASE("hand-checked example") {
    const auto a = point_cloud::from_rows({{0.0}}, chart::ambient);
    const auto b = point_cloud::from_rows({{0.0}, {3.0}}, chart::ambient);
    const auto r = hausdorff_naive(a, b);
    CHECK(r.direction_ab == 0.0);
    CHECK(r.direction_ba == 3.0);
    CHECK(r.distance == 3.0);
    CHECK(r.witness_b == 1);
    CHECK(hausdorff_accelerated(a, b).distance == 3.0);
    CHECK(hausdorff_earlybreak(a, b, 5).distance == 3.0);
}

TEST_CASE("witness ties go to the lowest index") {
    const auto a = point_cloud::from_rows({{1.0}, {-1.0}, {1.0}}, chart::ambient);
    const auto b = point_cloud::from_rows({{0.0}}, chart::ambient);
    CHECK(directed_hausdorff_naive(a, b).witness == 0);
    CHECK(directed_hausdorff_earlybreak(a, b, 1).witness == 0);
    CHECK(directed_hausdorff_indexed(a, build_nn_index(b)).witness == 0);
}

TEST_CASE("all variants agree with an independent oracle") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::size_t> dim_d(1, 6), n_d(1, 120);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = dim_d(rng);
        const auto a = random_cloud(rng, n_d(rng), dim);
        const auto b = random_cloud(rng, n_d(rng), dim, 0.3);
        const double ab = oracle_directed(a, b), ba = oracle_directed(b, a);
        const auto naive = hausdorff_naive(a, b);
        CHECK(std::fabs(naive.direction_ab - ab) <= 1e-12);
        CHECK(std::fabs(naive.direction_ba - ba) <= 1e-12);
        const auto eb = hausdorff_earlybreak(a, b, trial);
        const auto acc = hausdorff_accelerated(a, b, trial % 2 ? 2 : 1);
        CHECK(std::fabs(eb.distance - naive.distance) <= 1e-12);
        CHECK(std::fabs(acc.distance - naive.distance) <= 1e-12);
        CHECK(acc.witness_a == naive.witness_a);
        CHECK(acc.witness_b == naive.witness_b);
        CHECK(eb.witness_a == naive.witness_a);
    }
}

TEST_CASE("metric properties") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = random_cloud(rng, 40, 3), b = random_cloud(rng, 50, 3, 0.2), c = random_cloud(rng, 30, 3, -0.4);
        const double ab = hausdorff_accelerated(a, b).distance;
        CHECK(ab == hausdorff_accelerated(b, a).distance);
        CHECK(hausdorff_accelerated(a, a).distance == 0.0);
        CHECK(ab <= hausdorff_accelerated(a, c).distance + hausdorff_accelerated(c, b).distance + 1e-12);
    }
}

TEST_CASE("kd_tree nearest neighbour is exact") {
    std::mt19937_64 rng(5);
    const auto pts = random_cloud(rng, 500, 4);
    const kd_tree tree(pts.data(), 4);
    for (int q = 0; q < 200; ++q) {
        const auto query = random_cloud(rng, 1, 4, 0.5);
        double best = INFINITY;
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double d = squared_distance(query.row(0).data(), pts.row(i).data(), 4);
            if (d < best) best = d, best_i = i;
        }
        const auto hit = tree.nearest(query.row(0));
        CHECK(hit.sq_distance == best);
        CHECK(hit.index == best_i);
        CHECK(nn_distance(tree, query.row(0)) == doctest::Approx(std::sqrt(best)));
    }
}

TEST_CASE("input validation") {
    const auto a = point_cloud::from_rows({{0.0, 1.0}}, chart::ambient);
    const auto b = point_cloud::from_rows({{0.0, 1.0, 2.0}}, chart::ambient);
    CHECK_THROWS_AS(hausdorff_naive(a, b), parameter_error);
    CHECK_THROWS_AS(hausdorff_earlybreak(a, b, 0), parameter_error);
    CHECK_THROWS_AS(hausdorff_accelerated(a, b, 2), parameter_error);
}
