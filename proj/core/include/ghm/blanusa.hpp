#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "ghm/geometry.hpp"
#include "ghm/point_cloud.hpp"
#include "ghm/quadrature.hpp"

// Smooth isometric embedding F : H^2 -> E^6 built from the anti-periodic bump
// function chi and the two normalized primitives psi1, psi2. Points of H^2 are
// given in horocyclic coordinates (x, y).
namespace ghm::blanusa {

inline constexpr std::size_t default_sup_grid_points = 100000;

struct constants {
    double A = 0.0;  // integral of chi over [0, 1]
    double G1 = 0.0;
    double G2 = 0.0;
    double c = 0.0;        // 2 max(G1, G2)
    double epsilon = 0.0;  // (G1^2 + G2^2) / c^2
    quadrature_spec quadrature;
    std::size_t sup_grid_points = default_sup_grid_points;

    // Sup-norm scans at twice the step, kept for the stability check.
    double G1_coarse = 0.0;
    double G2_coarse = 0.0;
    bool sup_scan_stable = true;
};

// sin(pi t) exp(-1 / sin^2(pi t)), extended by 0 within 1e-12 of an integer.
double chi(double t);

// Adaptive-Simpson integral of chi over [a, b]; swapped bounds negate.
double chi_integral(double a, double b, const quadrature_spec& q);

// int_0^x chi, evaluated on the equivalent interval [0, v] with v in [0, 1]
// (chi is 2-periodic and odd about every even integer).
double chi_primitive(double x, const quadrature_spec& q);

double psi1(double x, const constants& k);
double psi2(double x, const constants& k);

// Sup-norm scan over a uniform grid of `sup_grid_points` on [-2, 2]. The
// derivative of sinh(x) psi_i(x) is taken by central differences with the
// grid step and with half of it; both scans must agree to 1e-4 relative or
// `sup_scan_stable` is cleared.
constants compute_constants(const quadrature_spec& q = {},
                            std::size_t sup_grid_points = default_sup_grid_points);

std::array<double, 4> h(double x, double y, const constants& k);
vec2 psi_coords(double x, double y);
std::array<double, 6> f0(double x, double y, const constants& k);

// General map for H^n, n = ys.size() + 1 >= 2: kappa-scaled concatenation of
// f0(x, sqrt(n-1) y_j), kappa = 1 / sqrt(n - 1).
std::vector<double> f_general(double x, std::span<const double> ys, const constants& k);

// Applies F = f0 row-wise to a horocyclic-H2 cloud.
point_cloud embed_cloud(const point_cloud& cloud, const constants& k, unsigned threads = 1);

struct pullback_report {
    double x = 0.0;
    double y = 0.0;
    std::array<std::array<double, 2>, 2> metric{};  // J^T J
    double deviation = 0.0;  // Frobenius distance to diag(1, e^{2x})
};

pullback_report pullback_metric_diagnostic(double x, double y, double step, const constants& k);

}  // namespace ghm::blanusa
