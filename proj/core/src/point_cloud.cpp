#include "ghm/point_cloud.hpp"

#include <cmath>
#include <map>

#include "ghm/error.hpp"

namespace ghm {

std::string_view to_string(chart c) {
    switch (c) {
    case chart::polar_euclidean: return "polar-euclidean";
    case chart::extrinsic_sphere: return "extrinsic-sphere";
    case chart::horocyclic_h2: return "horocyclic-h2";
    case chart::ambient_e6: return "ambient-e6";
    case chart::ambient: return "ambient";
    }
    return "ambient";
}

chart parse_chart(std::string_view label) {
    for (chart c : {chart::polar_euclidean, chart::extrinsic_sphere, chart::horocyclic_h2,
                    chart::ambient_e6, chart::ambient}) {
        if (to_string(c) == label) return c;
    }
    throw parameter_error("unknown chart label '" + std::string(label) + "'");
}

std::optional<std::size_t> chart_dimension(chart c) {
    switch (c) {
    case chart::polar_euclidean:
    case chart::horocyclic_h2: return 2;
    case chart::extrinsic_sphere: return 3;
    case chart::ambient_e6: return 6;
    case chart::ambient: return std::nullopt;
    }
    return std::nullopt;
}

std::optional<model_space> chart_source_space(chart c) {
    switch (c) {
    case chart::polar_euclidean: return model_space::e2();
    case chart::extrinsic_sphere: return model_space::s2();
    case chart::horocyclic_h2: return model_space::h2();
    default: return std::nullopt;
    }
}

point_cloud::point_cloud(std::vector<double> coords, std::size_t dim, ghm::chart c)
    : coords_(std::move(coords)), dim_(dim), chart_(c) {
    if (dim_ == 0) throw parameter_error("point cloud dimension must be positive");
    if (coords_.empty()) throw parameter_error("point cloud must contain at least one point");
    if (coords_.size() % dim_ != 0)
        throw parameter_error("coordinate count is not a multiple of the dimension");
    if (auto required = chart_dimension(c); required && *required != dim_) {
        throw parameter_error("chart " + std::string(to_string(c)) + " requires dimension " +
                              std::to_string(*required) + ", got " + std::to_string(dim_));
    }
    for (std::size_t k = 0; k < coords_.size(); ++k) {
        if (!std::isfinite(coords_[k])) {
            throw numerical_error("non-finite coordinate in row " + std::to_string(k / dim_));
        }
    }
}

point_cloud point_cloud::from_rows(const std::vector<std::vector<double>>& rows, ghm::chart c) {
    if (rows.empty()) throw parameter_error("point cloud must contain at least one point");
    const std::size_t dim = rows.front().size();
    std::vector<double> coords;
    coords.reserve(rows.size() * dim);
    for (const auto& r : rows) {
        if (r.size() != dim) throw parameter_error("ragged rows in point cloud");
        coords.insert(coords.end(), r.begin(), r.end());
    }
    return point_cloud(std::move(coords), dim, c);
}

point_cloud deduplicate(const point_cloud& cloud) {
    std::map<std::vector<double>, bool> seen;
    std::vector<double> out;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto r = cloud.row(i);
        std::vector<double> key(r.begin(), r.end());
        if (seen.emplace(key, true).second) out.insert(out.end(), key.begin(), key.end());
    }
    return point_cloud(std::move(out), cloud.dim(), cloud.chart());
}

point_cloud scaled(const point_cloud& cloud, double s) {
    std::vector<double> out(cloud.data().begin(), cloud.data().end());
    for (double& v : out) v *= s;
    const bool keep = s == 1.0 || !cloud.source_space();
    return point_cloud(std::move(out), cloud.dim(), keep ? cloud.chart() : chart::ambient);
}

}  // namespace ghm
