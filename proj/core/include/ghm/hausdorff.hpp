#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "ghm/kd_tree.hpp"
#include "ghm/point_cloud.hpp"

namespace ghm {

struct directed_result {
    double distance = 0.0;
    std::size_t witness = 0;  // index of the point attaining the supremum
};

struct hausdorff_result {
    double distance = 0.0;  // max(direction_ab, direction_ba)
    std::size_t witness_a = 0;
    std::size_t witness_b = 0;
    double direction_ab = 0.0;
    double direction_ba = 0.0;
};

// All variants require nonempty clouds of equal ambient dimension and use the
// Euclidean metric of that space. Witness ties go to the lowest index.

// O(|A| |B|) reference scan.
directed_result directed_hausdorff_naive(const point_cloud& a, const point_cloud& b);
hausdorff_result hausdorff_naive(const point_cloud& a, const point_cloud& b);

// Early-break scan: the inner loop over a shuffled B stops as soon as a
// point closer than the running maximum is seen. Exact for every seed.
directed_result directed_hausdorff_earlybreak(const point_cloud& a, const point_cloud& b, std::uint64_t shuffle_seed);
hausdorff_result hausdorff_earlybreak(const point_cloud& a, const point_cloud& b, std::uint64_t shuffle_seed);

using nn_index = kd_tree;

nn_index build_nn_index(const point_cloud& b);
double nn_distance(const nn_index& index, std::span<const double> query);

// Directed distance with an index over B; queries stop early once a point is
// known not to raise the running maximum.
directed_result directed_hausdorff_indexed(const point_cloud& a, const nn_index& b_index);

// Index over B for A -> B and over A for B -> A; the two directions run
// concurrently when threads > 1.
hausdorff_result hausdorff_accelerated(const point_cloud& a, const point_cloud& b, unsigned threads = 1);

}  // namespace ghm
