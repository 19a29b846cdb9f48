#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ghm {

class point_cloud;

// ---------------------------------------------------------------------------
// Model spaces and product signatures
// ---------------------------------------------------------------------------

enum class space_kind { euclidean = 0, spherical = 1, hyperbolic = 2 };

// A constant-curvature model space of dimension 2 with curvature in {0, +1, -1}.
class model_space {
public:
    constexpr model_space() = default;
    constexpr explicit model_space(space_kind kind) : kind_(kind) {}

    static constexpr model_space e2() { return model_space(space_kind::euclidean); }
    static constexpr model_space s2() { return model_space(space_kind::spherical); }
    static constexpr model_space h2() { return model_space(space_kind::hyperbolic); }

    constexpr space_kind kind() const { return kind_; }
    constexpr int dimension() const { return 2; }
    constexpr int curvature_sign() const {
        switch (kind_) {
        case space_kind::euclidean: return 0;
        case space_kind::spherical: return 1;
        case space_kind::hyperbolic: return -1;
        }
        return 0;
    }

    // "E2", "S2", "H2"
    std::string key() const;
    static model_space parse(std::string_view text);

    // Canonical factor order is E < S < H.
    friend constexpr auto operator<=>(model_space a, model_space b) {
        return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    }
    friend constexpr bool operator==(model_space a, model_space b) = default;

private:
    space_kind kind_ = space_kind::euclidean;
};

inline constexpr std::array<model_space, 3> all_model_spaces{model_space::e2(), model_space::s2(),
                                                            model_space::h2()};

// Multiset of model-space factors. Stored sorted, so equal multisets compare equal.
class product_signature {
public:
    product_signature() = default;
    explicit product_signature(std::vector<model_space> factors);
    product_signature(std::initializer_list<model_space> factors)
        : product_signature(std::vector<model_space>(factors)) {}

    const std::vector<model_space>& factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }
    std::array<int, 3> counts() const;

    // e.g. "E2xS2xH2"; factors sorted E < S < H.
    const std::string& canonical_key() const { return key_; }

    // Accepts 'x' or '*' separators, any factor order, any case.
    static product_signature parse(std::string_view text);

    // Canonical node order: factor count first, then factor sequence.
    friend std::strong_ordering operator<=>(const product_signature& a, const product_signature& b);
    friend bool operator==(const product_signature& a, const product_signature& b) {
        return a.factors_ == b.factors_;
    }

private:
    std::vector<model_space> factors_;
    std::string key_;
};

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

struct sampling_spec {
    std::size_t n_radial = 100;
    std::size_t n_angular = 100;
    double r_min = 0.0;
    double r_max = 1.0;

    friend bool operator==(const sampling_spec&, const sampling_spec&) = default;
};

inline constexpr double hyperbolic_r_min = 1e-8;
inline constexpr double hyperbolic_r_max = 0.97;

sampling_spec default_euclidean_spec(std::size_t n_radial = 100, std::size_t n_angular = 100);
sampling_spec default_sphere_spec(std::size_t n_radial = 100, std::size_t n_angular = 100);
sampling_spec default_hyperbolic_spec(std::size_t n_radial = 100, std::size_t n_angular = 100);

// Throws parameter_error on a spec that violates the sampler's invariants.
void validate_ball_spec(const sampling_spec& spec);
void validate_hyperbolic_spec(const sampling_spec& spec);

// Tensor grid (r cos t, r sin t); r includes both endpoints, t excludes 2*pi.
point_cloud sample_euclidean_ball(const sampling_spec& spec);

// Cap of geodesic radius r_max around (0, 0, 1); beta plays the role of r.
point_cloud sample_sphere_cap(const sampling_spec& spec);

// Euclidean polar grid -> exponential map -> horocyclic coordinates.
point_cloud sample_hyperbolic_ball(const sampling_spec& spec);

// Sampler dispatch on the model space.
point_cloud sample_ball(model_space space, const sampling_spec& spec);

// ---------------------------------------------------------------------------
// Hyperbolic plane charts
// ---------------------------------------------------------------------------

using vec2 = std::array<double, 2>;

// Exponential map at the origin of the Poincare disk: tanh(r/2) (cos theta, sin theta).
vec2 exp_map_h2(double r, double theta);

// Poincare disk -> horocyclic coordinates (x, y) with metric dx^2 + e^{2x} dy^2.
// Uses the Cayley map z = i (1 + w) / (1 - w), then (x, y) = (-log Im z, Re z).
vec2 disk_to_horocyclic(vec2 w);

double disk_distance(vec2 a, vec2 b);
double half_plane_distance(vec2 a, vec2 b);  // points given as (u, v), v > 0
double horocyclic_distance(vec2 a, vec2 b);

// ---------------------------------------------------------------------------
// Diameters
// ---------------------------------------------------------------------------

// Intrinsic distance between two rows of a cloud, per its chart.
double geodesic_distance(const point_cloud& cloud, std::size_t i, std::size_t j);

// Max pairwise geodesic distance (brute-force scan). Ambient charts throw chart_error.
double geodesic_diameter(const point_cloud& cloud);

}  // namespace ghm
