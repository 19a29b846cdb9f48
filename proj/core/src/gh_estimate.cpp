#include "ghm/gh_estimate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <random>

#include "ghm/error.hpp"
#include "ghm/parallel.hpp"

namespace ghm {

namespace {

constexpr std::uint64_t scan_order_seed = 0x9e3779b97f4a7c15ULL;

std::vector<std::size_t> scan_order(std::size_t n, std::uint64_t salt) {
    // Shuffled so the far points of a poor placement show up early and the
    // pruning threshold trips quickly. The final value does not depend on it.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(scan_order_seed ^ salt);
    std::shuffle(order.begin(), order.end(), rng);
    return order;
}

std::vector<embedding_candidate> with_offsets(const std::vector<embedding_candidate>& bases,
                                              const candidate_grid_spec& grid) {
    const auto offsets = offset_values(grid);
    std::vector<embedding_candidate> out;
    out.reserve(bases.size() * (1 + grid.offset_axes.size() * offsets.size()));
    for (const auto& base : bases) {
        out.push_back(base);
        for (int axis : grid.offset_axes) {
            for (double v : offsets) {
                if (v == 0.0) continue;
                auto c = base;
                c.offset_axis = axis;
                c.offset_value = v;
                out.push_back(c);
            }
        }
    }
    return out;
}

sampling_spec spec_for(model_space space, grid_resolution res) {
    switch (space.kind()) {
    case space_kind::euclidean: return default_euclidean_spec(res.n_radial, res.n_angular);
    case space_kind::spherical: return default_sphere_spec(res.n_radial, res.n_angular);
    case space_kind::hyperbolic: return default_hyperbolic_spec(res.n_radial, res.n_angular);
    }
    return {};
}

}  // namespace

std::string_view to_string(embedding_family f) {
    return f == embedding_family::euclidean_plane ? "euclidean-plane" : "sphere-triple";
}

void validate(const embedding_candidate& c) {
    const auto axes = c.active_axes();
    for (std::size_t i = 0; i < axes.size(); ++i) {
        if (axes[i] < 0 || axes[i] > 5) throw parameter_error("candidate axis out of range 0..5");
        for (std::size_t j = 0; j < i; ++j)
            if (axes[i] == axes[j]) throw parameter_error("candidate axes must be distinct");
    }
    if (c.offset_axis < 0 || c.offset_axis > 5) throw parameter_error("candidate offset axis out of range 0..5");
    if (c.family == embedding_family::euclidean_plane && c.negate)
        throw parameter_error("plane candidates do not take a sign flip");
    if (!std::isfinite(c.offset_value)) throw parameter_error("candidate offset must be finite");
}

void validate(const candidate_grid_spec& grid) {
    if (grid.offset_steps < 1) throw parameter_error("offset_steps must be >= 1");
    if (!(grid.offset_lo <= grid.offset_hi)) throw parameter_error("offset range must satisfy lo <= hi");
    if (grid.refine_top_k < 1) throw parameter_error("refine_top_k must be >= 1");
    for (int a : grid.offset_axes)
        if (a < 0 || a > 5) throw parameter_error("offset axes must lie in 0..5");
    for (auto res : {grid.coarse, grid.fine})
        if (res.n_radial < 2 || res.n_angular < 2) throw parameter_error("cloud resolution must be at least 2x2");
}

std::vector<double> offset_values(const candidate_grid_spec& grid) {
    std::vector<double> v(grid.offset_steps);
    if (grid.offset_steps == 1) {
        v[0] = grid.offset_lo;
        return v;
    }
    const double step = (grid.offset_hi - grid.offset_lo) / static_cast<double>(grid.offset_steps - 1);
    for (std::size_t i = 0; i < grid.offset_steps; ++i) v[i] = grid.offset_lo + step * static_cast<double>(i);
    v.back() = grid.offset_hi;
    return v;
}

std::vector<embedding_candidate> enumerate_euclidean_candidates(const candidate_grid_spec& grid) {
    validate(grid);
    std::vector<embedding_candidate> bases;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (i != j) bases.push_back({embedding_family::euclidean_plane, {i, j, 0}, false, 0, 0.0});
    return with_offsets(bases, grid);
}

std::vector<embedding_candidate> enumerate_sphere_candidates(const candidate_grid_spec& grid) {
    validate(grid);
    std::vector<embedding_candidate> bases;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            for (int k = 0; k < 6; ++k) {
                if (i == j || j == k || i == k) continue;
                for (bool neg : {false, true}) bases.push_back({embedding_family::sphere_triple, {i, j, k}, neg, 0, 0.0});
            }
    return with_offsets(bases, grid);
}

point_cloud apply_candidate(const embedding_candidate& c, const point_cloud& cloud) {
    validate(c);
    if (cloud.dim() != c.axis_count())
        throw parameter_error("candidate of family " + std::string(to_string(c.family)) + " expects " +
                              std::to_string(c.axis_count()) + "D points, got " + std::to_string(cloud.dim()) + "D");
    const double sign = c.negate ? -1.0 : 1.0;
    const auto axes = c.active_axes();
    std::vector<double> out(6 * cloud.size(), 0.0);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.row(i);
        double* v = out.data() + 6 * i;
        for (std::size_t k = 0; k < axes.size(); ++k) v[axes[k]] = sign * p[k];
        v[c.offset_axis] += c.offset_value;
    }
    return point_cloud(std::move(out), 6, chart::ambient_e6);
}

// ---------------------------------------------------------------------------

candidate_scorer::candidate_scorer(point_cloud source, point_cloud target)
    : source_(std::move(source)),
      target_(std::move(target)),
      source_index_(source_.data(), source_.dim()),
      target_index_(target_.data(), target_.dim()),
      source_order_(scan_order(source_.size(), 1)),
      target_order_(scan_order(target_.size(), 2)) {
    if (target_.dim() != 6) throw parameter_error("candidate_scorer target must live in R^6");
    if (source_.dim() != 2 && source_.dim() != 3) throw parameter_error("candidate_scorer source must be 2D or 3D");
}

double candidate_scorer::score(const embedding_candidate& c, double abort_above) const {
    if (c.axis_count() != source_.dim()) throw parameter_error("candidate family does not match the source cloud");
    const double sign = c.negate ? -1.0 : 1.0;
    const auto axes = c.active_axes();
    const std::size_t sd = axes.size();
    std::array<bool, 6> on_axis{};
    for (int a : axes) on_axis[static_cast<std::size_t>(a)] = true;

    double cmax_sq = 0.0;
    double cmax = 0.0;
    auto raise = [&](double sq) {
        cmax_sq = sq;
        cmax = std::sqrt(sq);
        return cmax > abort_above;
    };

    // placed source -> target
    std::array<double, 6> v{};
    for (std::size_t i : source_order_) {
        const auto p = source_.row(i);
        v.fill(0.0);
        for (std::size_t k = 0; k < sd; ++k) v[static_cast<std::size_t>(axes[k])] = sign * p[k];
        v[static_cast<std::size_t>(c.offset_axis)] += c.offset_value;
        const auto hit = target_index_.nearest(v, cmax_sq);
        if (hit.sq_distance > cmax_sq && raise(hit.sq_distance)) return cmax;
    }

    // target -> placed source, by pulling each target point back into the
    // source chart: |q - place(p)|^2 = |s q'_axes - p|^2 + |q'_rest|^2.
    std::array<double, 6> q{};
    std::array<double, 3> u{};
    for (std::size_t i : target_order_) {
        const auto row = target_.row(i);
        std::copy(row.begin(), row.end(), q.begin());
        q[static_cast<std::size_t>(c.offset_axis)] -= c.offset_value;
        double rest = 0.0;
        for (std::size_t j = 0; j < 6; ++j)
            if (!on_axis[j]) rest += q[j] * q[j];
        for (std::size_t k = 0; k < sd; ++k) u[k] = sign * q[static_cast<std::size_t>(axes[k])];
        const auto hit = source_index_.nearest({u.data(), sd}, cmax_sq - rest);
        const double total = hit.sq_distance + rest;
        if (total > cmax_sq && raise(total)) return cmax;
    }
    return cmax;
}

std::vector<ranked_candidate> top_k_candidates(const candidate_scorer& scorer,
                                               std::span<const embedding_candidate> candidates, std::size_t k,
                                               unsigned threads) {
    if (candidates.empty()) throw parameter_error("no candidates to score");
    if (k == 0) throw parameter_error("top-k needs k >= 1");
    k = std::min(k, candidates.size());

    // Max-heap on (value, index). The threshold is the current k-th best, which
    // never drops below the true k-th best, so a candidate pruned for exceeding
    // it cannot belong to the final top k.
    std::vector<ranked_candidate> heap;
    heap.reserve(k + 1);
    std::mutex heap_mutex;
    std::atomic<double> threshold{std::numeric_limits<double>::infinity()};

    parallel_for(candidates.size(), threads, [&](std::size_t i) {
        const double limit = threshold.load(std::memory_order_relaxed);
        const double v = scorer.score(candidates[i], limit);
        if (v > limit) return;
        const ranked_candidate r{v, i};
        std::lock_guard lock(heap_mutex);
        if (heap.size() < k) {
            heap.push_back(r);
            std::push_heap(heap.begin(), heap.end());
        } else if (r < heap.front()) {
            std::pop_heap(heap.begin(), heap.end());
            heap.back() = r;
            std::push_heap(heap.begin(), heap.end());
        }
        if (heap.size() == k) threshold.store(heap.front().value, std::memory_order_relaxed);
    });
    std::sort(heap.begin(), heap.end());
    return heap;
}

ranked_candidate best_candidate(const candidate_scorer& scorer, std::span<const embedding_candidate> candidates,
                                unsigned threads) {
    return top_k_candidates(scorer, candidates, 1, threads).front();
}

// ---------------------------------------------------------------------------

std::string_view to_string(gh_pair p) {
    switch (p) {
    case gh_pair::e2_h2: return "e2h2";
    case gh_pair::s2_h2: return "s2h2";
    case gh_pair::e2_s2: return "e2s2";
    }
    return "e2h2";
}

gh_pair parse_gh_pair(std::string_view text) {
    for (auto p : {gh_pair::e2_h2, gh_pair::s2_h2, gh_pair::e2_s2})
        if (to_string(p) == text) return p;
    throw parameter_error("unknown pair '" + std::string(text) + "' (expected e2h2, s2h2 or e2s2)");
}

std::array<model_space, 2> pair_spaces(gh_pair p) {
    switch (p) {
    case gh_pair::e2_h2: return {model_space::e2(), model_space::h2()};
    case gh_pair::s2_h2: return {model_space::s2(), model_space::h2()};
    case gh_pair::e2_s2: return {model_space::e2(), model_space::s2()};
    }
    return {model_space::e2(), model_space::h2()};
}

std::vector<embedding_candidate> candidates_for(gh_pair pair, const candidate_grid_spec& grid) {
    return pair == gh_pair::e2_h2 ? enumerate_euclidean_candidates(grid) : enumerate_sphere_candidates(grid);
}

std::array<point_cloud, 2> pipeline_clouds(gh_pair pair, grid_resolution res, const blanusa::constants& consts,
                                           unsigned threads) {
    switch (pair) {
    case gh_pair::e2_h2:
        return {sample_euclidean_ball(spec_for(model_space::e2(), res)),
                blanusa::embed_cloud(sample_hyperbolic_ball(spec_for(model_space::h2(), res)), consts, threads)};
    case gh_pair::s2_h2:
        return {sample_sphere_cap(spec_for(model_space::s2(), res)),
                blanusa::embed_cloud(sample_hyperbolic_ball(spec_for(model_space::h2(), res)), consts, threads)};
    case gh_pair::e2_s2: {
        const embedding_candidate plane{embedding_family::euclidean_plane, {0, 1, 0}, false, 0, 0.0};
        return {sample_sphere_cap(spec_for(model_space::s2(), res)),
                apply_candidate(plane, sample_euclidean_ball(spec_for(model_space::e2(), res)))};
    }
    }
    throw parameter_error("unknown pair");
}

gh_estimate estimate_gh(gh_pair pair, const candidate_grid_spec& grid, const blanusa::constants& consts,
                        unsigned threads) {
    validate(grid);
    const auto candidates = candidates_for(pair, grid);
    if (candidates.empty()) throw parameter_error("candidate grid is empty");

    const auto spaces = pair_spaces(pair);
    gh_estimate est;
    est.pair = pair;
    est.exhaustive = grid.exhaustive;
    // The moving cloud is the S2 cap for e2_s2, otherwise the first space.
    const model_space moving = pair == gh_pair::e2_s2 ? model_space::s2() : spaces[0];
    const model_space fixed = pair == gh_pair::e2_s2 ? model_space::e2() : spaces[1];
    est.source_spec = spec_for(moving, grid.fine);
    est.target_spec = spec_for(fixed, grid.fine);

    ranked_candidate best;
    if (grid.exhaustive) {
        auto clouds = pipeline_clouds(pair, grid.fine, consts, threads);
        const candidate_scorer scorer(std::move(clouds[0]), std::move(clouds[1]));
        best = best_candidate(scorer, candidates, threads);
        est.coarse_value = best.value;
        est.candidates_evaluated = candidates.size();
    } else {
        auto coarse = pipeline_clouds(pair, grid.coarse, consts, threads);
        const candidate_scorer coarse_scorer(std::move(coarse[0]), std::move(coarse[1]));
        const auto top = top_k_candidates(coarse_scorer, candidates, grid.refine_top_k, threads);
        est.coarse_value = top.front().value;

        // Re-score survivors in enumeration order so ties resolve to the lowest index.
        std::vector<std::size_t> survivors;
        for (const auto& r : top) survivors.push_back(r.index);
        std::sort(survivors.begin(), survivors.end());
        std::vector<embedding_candidate> subset;
        for (std::size_t i : survivors) subset.push_back(candidates[i]);

        auto fine = pipeline_clouds(pair, grid.fine, consts, threads);
        const candidate_scorer fine_scorer(std::move(fine[0]), std::move(fine[1]));
        const auto fine_best = best_candidate(fine_scorer, subset, threads);
        best = {fine_best.value, survivors[fine_best.index]};
        est.candidates_evaluated = candidates.size() + subset.size();
    }

    est.best_candidate = candidates[best.index];
    est.raw_value = best.value;
    // A unit ball sits at Hausdorff distance at most 1 from another unit ball
    // through the product embedding, so larger candidate minima are capped.
    est.value = std::min(best.value, 1.0);
    return est;
}

double diameter_bound(const point_cloud& a, const point_cloud& b) {
    return std::max(geodesic_diameter(a), geodesic_diameter(b));
}

distance_table build_distance_table(std::span<const gh_estimate> estimates) {
    auto table = distance_table::defaults();
    for (const auto& e : estimates) {
        if (e.pair == gh_pair::e2_s2) continue;  // the analytic constant stays authoritative
        const auto spaces = pair_spaces(e.pair);
        table.set(spaces[0], spaces[1], e.value, provenance::computed);
    }
    return table;
}

}  // namespace ghm
