#include "ghm/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "ghm/error.hpp"

namespace ghm {

namespace {

void check_pair(const point_cloud& a, const point_cloud& b) {
    if (a.size() == 0 || b.size() == 0) throw parameter_error("Hausdorff distance needs nonempty clouds");
    if (a.dim() != b.dim())
        throw parameter_error("Hausdorff distance needs equal ambient dimensions (" + std::to_string(a.dim()) +
                              " vs " + std::to_string(b.dim()) + ")");
}

hausdorff_result combine(directed_result ab, directed_result ba) {
    return {std::max(ab.distance, ba.distance), ab.witness, ba.witness, ab.distance, ba.distance};
}

}  // namespace

directed_result directed_hausdorff_naive(const point_cloud& a, const point_cloud& b) {
    check_pair(a, b);
    const std::size_t d = a.dim();
    const double* pa = a.data().data();
    const double* pb = b.data().data();
    double best_sq = -1.0;
    std::size_t witness = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double inner = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < b.size(); ++j) inner = std::min(inner, squared_distance(pa + i * d, pb + j * d, d));
        if (inner > best_sq) {
            best_sq = inner;
            witness = i;
        }
    }
    return {std::sqrt(best_sq), witness};
}

hausdorff_result hausdorff_naive(const point_cloud& a, const point_cloud& b) {
    return combine(directed_hausdorff_naive(a, b), directed_hausdorff_naive(b, a));
}

directed_result directed_hausdorff_earlybreak(const point_cloud& a, const point_cloud& b, std::uint64_t shuffle_seed) {
    check_pair(a, b);
    const std::size_t d = a.dim();
    std::vector<std::size_t> order(b.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);

    const double* pa = a.data().data();
    const double* pb = b.data().data();
    double cmax_sq = 0.0;
    std::size_t witness = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double cmin_sq = std::numeric_limits<double>::infinity();
        bool broke = false;
        for (std::size_t j : order) {
            const double s = squared_distance(pa + i * d, pb + j * d, d);
            if (s < cmax_sq) {
                broke = true;
                break;
            }
            cmin_sq = std::min(cmin_sq, s);
        }
        if (!broke && cmin_sq > cmax_sq) {
            cmax_sq = cmin_sq;
            witness = i;
        }
    }
    return {std::sqrt(cmax_sq), witness};
}

hausdorff_result hausdorff_earlybreak(const point_cloud& a, const point_cloud& b, std::uint64_t shuffle_seed) {
    return combine(directed_hausdorff_earlybreak(a, b, shuffle_seed),
                   directed_hausdorff_earlybreak(b, a, shuffle_seed + 1));
}

nn_index build_nn_index(const point_cloud& b) { return kd_tree(b.data(), b.dim()); }

double nn_distance(const nn_index& index, std::span<const double> query) {
    return std::sqrt(index.nearest(query).sq_distance);
}

directed_result directed_hausdorff_indexed(const point_cloud& a, const nn_index& b_index) {
    if (a.dim() != b_index.dim()) throw parameter_error("Hausdorff distance needs equal ambient dimensions");
    double cmax_sq = 0.0;
    std::size_t witness = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto hit = b_index.nearest(a.row(i), cmax_sq);
        if (hit.sq_distance > cmax_sq) {
            cmax_sq = hit.sq_distance;
            witness = i;
        }
    }
    return {std::sqrt(cmax_sq), witness};
}

hausdorff_result hausdorff_accelerated(const point_cloud& a, const point_cloud& b, unsigned threads) {
    check_pair(a, b);
    if (threads > 1) {
        directed_result ba;
        std::exception_ptr failure;
        std::thread worker([&] {
            try {
                ba = directed_hausdorff_indexed(b, build_nn_index(a));
            } catch (...) {
                failure = std::current_exception();
            }
        });
        directed_result ab;
        try {
            ab = directed_hausdorff_indexed(a, build_nn_index(b));
        } catch (...) {
            worker.join();
            throw;
        }
        worker.join();
        if (failure) std::rethrow_exception(failure);
        return combine(ab, ba);
    }
    return combine(directed_hausdorff_indexed(a, build_nn_index(b)), directed_hausdorff_indexed(b, build_nn_index(a)));
}

}  // namespace ghm
