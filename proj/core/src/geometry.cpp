#include "ghm/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>

#include "ghm/error.hpp"
#include "ghm/point_cloud.hpp"

namespace ghm {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::vector<double> radial_grid(const sampling_spec& spec) {
    std::vector<double> r(spec.n_radial);
    const double step = (spec.r_max - spec.r_min) / static_cast<double>(spec.n_radial - 1);
    for (std::size_t i = 0; i < spec.n_radial; ++i) r[i] = spec.r_min + step * static_cast<double>(i);
    r.back() = spec.r_max;
    return r;
}

std::vector<double> angular_grid(std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t j = 0; j < n; ++j) t[j] = two_pi * static_cast<double>(j) / static_cast<double>(n);
    return t;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string model_space::key() const {
    switch (kind_) {
    case space_kind::euclidean: return "E2";
    case space_kind::spherical: return "S2";
    case space_kind::hyperbolic: return "H2";
    }
    return "E2";
}

model_space model_space::parse(std::string_view text) {
    std::string t;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(static_cast<char>(std::toupper(ch)));
    }
    if (t == "E2" || t == "E") return e2();
    if (t == "S2" || t == "S") return s2();
    if (t == "H2" || t == "H") return h2();
    throw parameter_error("unknown model space '" + std::string(text) + "'");
}

product_signature::product_signature(std::vector<model_space> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw parameter_error("a product signature needs at least one factor");
    std::sort(factors_.begin(), factors_.end());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) key_ += 'x';
        key_ += factors_[i].key();
    }
}

std::array<int, 3> product_signature::counts() const {
    std::array<int, 3> c{0, 0, 0};
    for (auto f : factors_) ++c[static_cast<int>(f.kind())];
    return c;
}

product_signature product_signature::parse(std::string_view text) {
    std::vector<model_space> factors;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == 'x' || text[i] == 'X' || text[i] == '*') {
            auto token = text.substr(start, i - start);
            if (token.empty()) throw parameter_error("malformed signature '" + std::string(text) + "'");
            factors.push_back(model_space::parse(token));
            start = i + 1;
        }
    }
    return product_signature(std::move(factors));
}

std::strong_ordering operator<=>(const product_signature& a, const product_signature& b) {
    if (auto c = a.factors_.size() <=> b.factors_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.factors_.begin(), a.factors_.end(), b.factors_.begin(),
                                                  b.factors_.end());
}

// ---------------------------------------------------------------------------

sampling_spec default_euclidean_spec(std::size_t n_radial, std::size_t n_angular) {
    return {n_radial, n_angular, 0.0, 1.0};
}

sampling_spec default_sphere_spec(std::size_t n_radial, std::size_t n_angular) {
    return {n_radial, n_angular, 0.0, 1.0};
}

sampling_spec default_hyperbolic_spec(std::size_t n_radial, std::size_t n_angular) {
    return {n_radial, n_angular, hyperbolic_r_min, hyperbolic_r_max};
}

void validate_ball_spec(const sampling_spec& spec) {
    if (spec.n_radial < 2 || spec.n_angular < 2)
        throw parameter_error("sampling grid needs at least 2 radial and 2 angular points");
    if (!(spec.r_min >= 0.0) || !(spec.r_min < spec.r_max) || !(spec.r_max <= 1.0))
        throw parameter_error("sampling radii must satisfy 0 <= r_min < r_max <= 1");
}

void validate_hyperbolic_spec(const sampling_spec& spec) {
    validate_ball_spec(spec);
    if (spec.r_min < hyperbolic_r_min || spec.r_max > hyperbolic_r_max)
        throw parameter_error("hyperbolic sampling radii must lie in [1e-8, 0.97]");
}

point_cloud sample_euclidean_ball(const sampling_spec& spec) {
    validate_ball_spec(spec);
    const auto r = radial_grid(spec);
    const auto t = angular_grid(spec.n_angular);
    std::vector<double> coords;
    coords.reserve(2 * r.size() * t.size());
    for (double ri : r) {
        for (double tj : t) {
            coords.push_back(ri * std::cos(tj));
            coords.push_back(ri * std::sin(tj));
        }
    }
    return point_cloud(std::move(coords), 2, chart::polar_euclidean);
}

point_cloud sample_sphere_cap(const sampling_spec& spec) {
    validate_ball_spec(spec);
    const auto beta = radial_grid(spec);
    const auto alpha = angular_grid(spec.n_angular);
    std::vector<double> coords;
    coords.reserve(3 * beta.size() * alpha.size());
    for (double b : beta) {
        const double sb = std::sin(b), cb = std::cos(b);
        for (double a : alpha) {
            coords.push_back(sb * std::cos(a));
            coords.push_back(sb * std::sin(a));
            coords.push_back(cb);
        }
    }
    return point_cloud(std::move(coords), 3, chart::extrinsic_sphere);
}

point_cloud sample_hyperbolic_ball(const sampling_spec& spec) {
    validate_hyperbolic_spec(spec);
    const auto r = radial_grid(spec);
    const auto t = angular_grid(spec.n_angular);
    std::vector<double> coords;
    coords.reserve(2 * r.size() * t.size());
    for (double ri : r) {
        for (double tj : t) {
            const vec2 xy = disk_to_horocyclic(exp_map_h2(ri, tj));
            coords.push_back(xy[0]);
            coords.push_back(xy[1]);
        }
    }
    return point_cloud(std::move(coords), 2, chart::horocyclic_h2);
}

point_cloud sample_ball(model_space space, const sampling_spec& spec) {
    switch (space.kind()) {
    case space_kind::euclidean: return sample_euclidean_ball(spec);
    case space_kind::spherical: return sample_sphere_cap(spec);
    case space_kind::hyperbolic: return sample_hyperbolic_ball(spec);
    }
    throw parameter_error("unknown model space");
}

// ---------------------------------------------------------------------------

vec2 exp_map_h2(double r, double theta) {
    const double rho = std::tanh(0.5 * r);
    return {rho * std::cos(theta), rho * std::sin(theta)};
}

vec2 disk_to_horocyclic(vec2 w) {
    const double n2 = w[0] * w[0] + w[1] * w[1];
    if (!(n2 < 1.0)) throw domain_error("disk_to_horocyclic: |w| must be < 1");
    // i (1 + w) / (1 - w) = (-2 b + i (1 - |w|^2)) / |1 - w|^2 for w = a + i b
    const double denom = (1.0 - w[0]) * (1.0 - w[0]) + w[1] * w[1];
    const double re = -2.0 * w[1] / denom;
    const double im = (1.0 - n2) / denom;
    return {-std::log(im), re};
}

double disk_distance(vec2 a, vec2 b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1];
    const double na = 1.0 - (a[0] * a[0] + a[1] * a[1]);
    const double nb = 1.0 - (b[0] * b[0] + b[1] * b[1]);
    return 2.0 * std::asinh(std::sqrt((dx * dx + dy * dy) / (na * nb)));
}

double half_plane_distance(vec2 a, vec2 b) {
    const double du = a[0] - b[0], dv = a[1] - b[1];
    return 2.0 * std::asinh(std::sqrt(du * du + dv * dv) / (2.0 * std::sqrt(a[1] * b[1])));
}

double horocyclic_distance(vec2 a, vec2 b) {
    return half_plane_distance({a[1], std::exp(-a[0])}, {b[1], std::exp(-b[0])});
}

double geodesic_distance(const point_cloud& cloud, std::size_t i, std::size_t j) {
    const auto a = cloud.row(i);
    const auto b = cloud.row(j);
    switch (cloud.chart()) {
    case chart::polar_euclidean: return std::hypot(a[0] - b[0], a[1] - b[1]);
    case chart::extrinsic_sphere: {
        const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        const double cx = a[1] * b[2] - a[2] * b[1];
        const double cy = a[2] * b[0] - a[0] * b[2];
        const double cz = a[0] * b[1] - a[1] * b[0];
        return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot);
    }
    case chart::horocyclic_h2: return horocyclic_distance({a[0], a[1]}, {b[0], b[1]});
    case chart::ambient_e6:
    case chart::ambient: break;
    }
    throw chart_error("geodesic distance needs an intrinsic chart, got " + std::string(to_string(cloud.chart())));
}

double geodesic_diameter(const point_cloud& cloud) {
    if (!cloud.source_space())
        throw chart_error("geodesic_diameter: unsupported chart " + std::string(to_string(cloud.chart())));
    const std::size_t n = cloud.size();
    const std::size_t d = cloud.dim();
    const auto data = cloud.data();

    // Scan a key that is monotone in the geodesic distance, then evaluate the
    // distance once on the winning pair.
    std::vector<double> scratch;
    if (cloud.chart() == chart::horocyclic_h2) {
        scratch.resize(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            scratch[2 * i] = data[2 * i + 1];
            scratch[2 * i + 1] = std::exp(-data[2 * i]);
        }
    }
    double best_key = -std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double key = 0.0;
            switch (cloud.chart()) {
            case chart::polar_euclidean: {
                const double dx = data[2 * i] - data[2 * j], dy = data[2 * i + 1] - data[2 * j + 1];
                key = dx * dx + dy * dy;
                break;
            }
            case chart::extrinsic_sphere:
                key = -(data[d * i] * data[d * j] + data[d * i + 1] * data[d * j + 1] +
                        data[d * i + 2] * data[d * j + 2]);
                break;
            default: {
                const double du = scratch[2 * i] - scratch[2 * j];
                const double dv = scratch[2 * i + 1] - scratch[2 * j + 1];
                key = (du * du + dv * dv) / (scratch[2 * i + 1] * scratch[2 * j + 1]);
                break;
            }
            }
            if (key > best_key) {
                best_key = key;
                bi = i;
                bj = j;
            }
        }
    }
    return n < 2 ? 0.0 : geodesic_distance(cloud, bi, bj);
}

}  // namespace ghm
