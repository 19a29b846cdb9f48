#include "ghm/kd_tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "ghm/error.hpp"

namespace ghm {

kd_tree::kd_tree(std::span<const double> coords, std::size_t dim, std::size_t leaf_size)
    : dim_(dim), leaf_size_(std::max<std::size_t>(leaf_size, 1)) {
    if (dim_ == 0 || coords.empty() || coords.size() % dim_ != 0)
        throw parameter_error("kd_tree needs a nonempty point set with a positive dimension");
    const std::size_t n = coords.size() / dim_;
    if (n > std::numeric_limits<std::uint32_t>::max()) throw parameter_error("kd_tree: too many points");
    index_.resize(n);
    std::iota(index_.begin(), index_.end(), std::size_t{0});
    points_.assign(coords.begin(), coords.end());
    nodes_.reserve(2 * n / leaf_size_ + 1);
    build(0, static_cast<std::uint32_t>(n));

    // Reorder coordinates to follow the tree layout.
    std::vector<double> reordered(points_.size());
    for (std::size_t i = 0; i < n; ++i)
        std::copy_n(coords.data() + index_[i] * dim_, dim_, reordered.data() + i * dim_);
    points_ = std::move(reordered);
}

std::int32_t kd_tree::build(std::uint32_t begin, std::uint32_t end) {
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(node{begin, end});
    if (end - begin <= leaf_size_) return id;

    // Split on the dimension of largest spread at the median.
    std::size_t best_dim = 0;
    double best_spread = -1.0;
    for (std::size_t d = 0; d < dim_; ++d) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::uint32_t i = begin; i < end; ++i) {
            const double v = points_[index_[i] * dim_ + d];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi - lo > best_spread) {
            best_spread = hi - lo;
            best_dim = d;
        }
    }
    if (best_spread <= 0.0) return id;  // all points identical: keep as a leaf

    const std::uint32_t mid = begin + (end - begin) / 2;
    auto key = [&](std::size_t row) { return points_[row * dim_ + best_dim]; };
    std::nth_element(index_.begin() + begin, index_.begin() + mid, index_.begin() + end,
                     [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    const double split = key(index_[mid]);

    const std::int32_t left = build(begin, mid);
    const std::int32_t right = build(mid, end);
    node& self = nodes_[static_cast<std::size_t>(id)];
    self.left = left;
    self.right = right;
    self.split_dim = static_cast<std::uint32_t>(best_dim);
    self.split = split;
    return id;
}

kd_tree::hit kd_tree::nearest(std::span<const double> query, double stop_below_sq) const {
    if (query.size() != dim_)
        throw parameter_error("query dimension " + std::to_string(query.size()) + " does not match index dimension " +
                              std::to_string(dim_));
    hit best{std::numeric_limits<double>::infinity(), 0};
    constexpr std::size_t stack_dims = 16;
    double offsets_small[stack_dims] = {};
    std::vector<double> offsets_large;
    double* offsets = offsets_small;
    if (dim_ > stack_dims) {
        offsets_large.assign(dim_, 0.0);
        offsets = offsets_large.data();
    }
    search(0, query.data(), offsets, 0.0, best, stop_below_sq);
    return best;
}

void kd_tree::search(std::int32_t id, const double* q, double* offsets, double lower_sq, hit& best,
                     double stop_below_sq) const {
    const node& nd = nodes_[static_cast<std::size_t>(id)];
    if (nd.left < 0) {
        for (std::uint32_t i = nd.begin; i < nd.end; ++i) {
            const double s = squared_distance(q, points_.data() + static_cast<std::size_t>(i) * dim_, dim_);
            if (s < best.sq_distance) {
                best.sq_distance = s;
                best.index = index_[i];
            }
        }
        return;
    }
    // Points equal to the split value may sit on either side, so the far side is
    // visited unless its lower bound strictly exceeds the best distance so far.
    const double diff = q[nd.split_dim] - nd.split;
    const std::int32_t near_child = diff < 0.0 ? nd.left : nd.right;
    const std::int32_t far_child = diff < 0.0 ? nd.right : nd.left;
    search(near_child, q, offsets, lower_sq, best, stop_below_sq);
    if (best.sq_distance < stop_below_sq) return;

    const double old = offsets[nd.split_dim];
    const double far_lower = lower_sq - old * old + diff * diff;
    if (far_lower <= best.sq_distance) {
        offsets[nd.split_dim] = diff;
        search(far_child, q, offsets, far_lower, best, stop_below_sq);
        offsets[nd.split_dim] = old;
    }
}

}  // namespace ghm
