#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ghm/blanusa.hpp"
#include "ghm/distance_table.hpp"
#include "ghm/geometry.hpp"
#include "ghm/kd_tree.hpp"
#include "ghm/point_cloud.hpp"

namespace ghm {

// ---------------------------------------------------------------------------
// Candidate embeddings into R^6
// ---------------------------------------------------------------------------

enum class embedding_family { euclidean_plane, sphere_triple };

std::string_view to_string(embedding_family f);

// Rigid placement of a planar (2D) or extrinsic-sphere (3D) cloud into R^6:
// coordinates, optionally negated, go to `axes` (0-based, distinct), the
// remaining coordinates are 0, then `offset_value` is added on `offset_axis`.
struct embedding_candidate {
    embedding_family family = embedding_family::euclidean_plane;
    std::array<int, 3> axes{0, 1, 2};
    bool negate = false;
    int offset_axis = 0;
    double offset_value = 0.0;

    std::size_t axis_count() const { return family == embedding_family::euclidean_plane ? 2 : 3; }
    std::span<const int> active_axes() const { return {axes.data(), axis_count()}; }

    friend bool operator==(const embedding_candidate&, const embedding_candidate&) = default;
};

void validate(const embedding_candidate& c);

struct grid_resolution {
    std::size_t n_radial = 30;
    std::size_t n_angular = 30;

    friend bool operator==(const grid_resolution&, const grid_resolution&) = default;
};

struct candidate_grid_spec {
    std::size_t offset_steps = 100;
    double offset_lo = -0.5;
    double offset_hi = 0.5;
    std::vector<int> offset_axes{0, 1, 2, 3, 4, 5};
    grid_resolution coarse{30, 30};
    grid_resolution fine{100, 100};
    std::size_t refine_top_k = 50;
    bool exhaustive = false;  // score every candidate at the fine resolution

    friend bool operator==(const candidate_grid_spec&, const candidate_grid_spec&) = default;
};

void validate(const candidate_grid_spec& grid);

// Uniform offsets over [lo, hi] with both endpoints; one step gives {lo}.
std::vector<double> offset_values(const candidate_grid_spec& grid);

// Ordered axis pairs (30) x (zero offset + offset_axes x offset values);
// offsets equal to zero collapse into the single zero-offset candidate.
std::vector<embedding_candidate> enumerate_euclidean_candidates(const candidate_grid_spec& grid);

// Ordered axis triples (120) x negate {false, true} x the same offsets.
std::vector<embedding_candidate> enumerate_sphere_candidates(const candidate_grid_spec& grid);

point_cloud apply_candidate(const embedding_candidate& c, const point_cloud& cloud);

// ---------------------------------------------------------------------------
// Scoring candidates against a fixed target in R^6
// ---------------------------------------------------------------------------

// Holds a source cloud in its own chart and a fixed 6D target with indexes over
// both, so each candidate's symmetric Hausdorff distance is computed without
// materializing the placed cloud. Immutable; safe to share between threads.
class candidate_scorer {
public:
    candidate_scorer(point_cloud source, point_cloud target);

    const point_cloud& source() const { return source_; }
    const point_cloud& target() const { return target_; }

    // Symmetric Hausdorff distance between apply_candidate(c, source) and the
    // target. Scanning stops once the running maximum strictly exceeds
    // `abort_above`; the returned partial value is then > abort_above.
    double score(const embedding_candidate& c, double abort_above = std::numeric_limits<double>::infinity()) const;

private:
    point_cloud source_;
    point_cloud target_;
    kd_tree source_index_;
    kd_tree target_index_;
    std::vector<std::size_t> source_order_;
    std::vector<std::size_t> target_order_;
};

struct ranked_candidate {
    double value = 0.0;
    std::size_t index = 0;  // position in the candidate list

    friend auto operator<=>(const ranked_candidate&, const ranked_candidate&) = default;
};

// The k best candidates by (value, index), with exact values, sorted ascending.
// The result does not depend on the thread count.
std::vector<ranked_candidate> top_k_candidates(const candidate_scorer& scorer,
                                               std::span<const embedding_candidate> candidates, std::size_t k,
                                               unsigned threads = 1);

ranked_candidate best_candidate(const candidate_scorer& scorer, std::span<const embedding_candidate> candidates,
                                unsigned threads = 1);

// ---------------------------------------------------------------------------
// Gromov-Hausdorff estimates between unit balls
// ---------------------------------------------------------------------------

enum class gh_pair { e2_h2, s2_h2, e2_s2 };

std::string_view to_string(gh_pair p);
gh_pair parse_gh_pair(std::string_view text);
std::array<model_space, 2> pair_spaces(gh_pair p);

struct gh_estimate {
    gh_pair pair = gh_pair::e2_h2;
    double value = 0.0;         // min over candidates at the fine resolution, capped at 1
    double raw_value = 0.0;     // before the unit-ball cap
    embedding_candidate best_candidate;
    double coarse_value = 0.0;  // best coarse-phase score (equals value in exhaustive mode)
    sampling_spec source_spec;  // fine-phase specs
    sampling_spec target_spec;
    std::size_t candidates_evaluated = 0;
    bool exhaustive = false;
};

// Two-phase pipeline: score every candidate on coarse clouds, keep the best
// refine_top_k, re-score those on fine clouds and take the minimum. In
// exhaustive mode every candidate is scored on the fine clouds directly.
//
// e2_h2 / s2_h2 place the E2 ball or S2 cap against F(Q) for a hyperbolic
// cloud Q. e2_s2 is a numeric cross-check: S2 candidates against the E2 ball
// fixed on axes (0, 1).
gh_estimate estimate_gh(gh_pair pair, const candidate_grid_spec& grid, const blanusa::constants& consts,
                        unsigned threads = 1);

// Clouds the pipeline samples for a pair at one resolution (source, target),
// with the target already in R^6.
std::array<point_cloud, 2> pipeline_clouds(gh_pair pair, grid_resolution res, const blanusa::constants& consts,
                                           unsigned threads = 1);

std::vector<embedding_candidate> candidates_for(gh_pair pair, const candidate_grid_spec& grid);

// max(diam A, diam B) with intrinsic geodesic distances.
double diameter_bound(const point_cloud& a, const point_cloud& b);

// Builds a table from the defaults, replacing entries with fresh estimates.
distance_table build_distance_table(std::span<const gh_estimate> estimates);

}  // namespace ghm
