#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ghm {

// Exact nearest-neighbour k-d tree over a static row-major point set of any
// dimension. Built once, immutable afterwards, safe for concurrent queries.
class kd_tree {
public:
    struct hit {
        double sq_distance;
        std::size_t index;  // row in the original point set
    };

    kd_tree(std::span<const double> coords, std::size_t dim, std::size_t leaf_size = 12);

    std::size_t size() const { return index_.size(); }
    std::size_t dim() const { return dim_; }

    // Exact nearest neighbour. When stop_below_sq > 0 the search may return
    // early with any point strictly closer than sqrt(stop_below_sq); the
    // returned distance is then only an upper bound below that threshold.
    hit nearest(std::span<const double> query, double stop_below_sq = 0.0) const;

private:
    struct node {
        std::uint32_t begin, end;  // range in the reordered point array
        std::int32_t left = -1, right = -1;
        std::uint32_t split_dim = 0;
        double split = 0.0;
    };

    std::int32_t build(std::uint32_t begin, std::uint32_t end);
    void search(std::int32_t id, const double* q, double* offsets, double lower_sq, hit& best,
                double stop_below_sq) const;

    std::size_t dim_;
    std::size_t leaf_size_;
    std::vector<double> points_;       // reordered copy
    std::vector<std::size_t> index_;   // reordered -> original row
    std::vector<node> nodes_;
};

// Squared Euclidean distance; every Hausdorff path uses this accumulation order.
inline double squared_distance(const double* a, const double* b, std::size_t dim) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return s;
}

}  // namespace ghm
