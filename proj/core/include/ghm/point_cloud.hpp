#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ghm/geometry.hpp"

namespace ghm {

enum class chart {
    polar_euclidean,   // 2D, discretized E2 ball
    extrinsic_sphere,  // 3D, points on the unit sphere
    horocyclic_h2,     // 2D, (x, y) with metric dx^2 + e^{2x} dy^2
    ambient_e6,        // 6D, images inside R^6
    ambient,           // free Euclidean cloud of any dimension
};

std::string_view to_string(chart c);
chart parse_chart(std::string_view label);

// Ambient dimension a chart requires; nullopt for the free `ambient` chart.
std::optional<std::size_t> chart_dimension(chart c);

// The model space a chart discretizes; nullopt for ambient charts.
std::optional<model_space> chart_source_space(chart c);

// Immutable N x d row-major set of finite points.
class point_cloud {
public:
    point_cloud(std::vector<double> coords, std::size_t dim, ghm::chart c);

    static point_cloud from_rows(const std::vector<std::vector<double>>& rows, ghm::chart c);

    std::size_t size() const { return coords_.size() / dim_; }
    std::size_t dim() const { return dim_; }
    ghm::chart chart() const { return chart_; }
    std::optional<model_space> source_space() const { return chart_source_space(chart_); }

    std::span<const double> row(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
    std::span<const double> data() const { return coords_; }

    // Same coordinates under a different label (dimension must still fit).
    point_cloud relabel(ghm::chart c) const { return point_cloud(coords_, dim_, c); }

    friend bool operator==(const point_cloud&, const point_cloud&) = default;

private:
    std::vector<double> coords_;
    std::size_t dim_;
    ghm::chart chart_;
};

// Removes exact duplicate rows, keeping first occurrences in order.
point_cloud deduplicate(const point_cloud& cloud);

// Scales every coordinate by s. Intrinsic charts become `ambient` unless s == 1.
point_cloud scaled(const point_cloud& cloud, double s);

}  // namespace ghm
