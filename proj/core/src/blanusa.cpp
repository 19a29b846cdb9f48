#include "ghm/blanusa.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "ghm/error.hpp"
#include "ghm/parallel.hpp"

namespace ghm::blanusa {

namespace {

constexpr double integer_cutoff = 1e-12;
constexpr double radicand_floor = -1e-12;
constexpr double sup_stability_rtol = 1e-4;

double normalized_sqrt(double integral, double A) {
    const double radicand = integral / A;
    if (radicand < radicand_floor) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "psi radicand %.3e is negative; quadrature tolerance too loose", radicand);
        throw numerical_error(msg);
    }
    return std::sqrt(std::max(radicand, 0.0));
}

// Running primitive P(z_k) = int_0^{z_k} chi for z_k = start + k * step. The
// sum is anchored at the node nearest 0 and accumulated outwards so that the
// values near the zeros of psi carry no start-point error.
std::vector<double> primitive_table(double start, double step, std::size_t count, const quadrature_spec& q) {
    std::vector<double> table(count);
    const double span = step * static_cast<double>(count - 1);
    quadrature_spec piece = q;
    piece.abs_tol = q.abs_tol * step / std::max(span, step);
    auto node = [&](std::size_t k) { return start + step * static_cast<double>(k); };

    const double anchor_pos = std::clamp(std::round(-start / step), 0.0, static_cast<double>(count - 1));
    const auto anchor = static_cast<std::size_t>(anchor_pos);
    table[anchor] = chi_integral(0.0, node(anchor), q);
    for (std::size_t k = anchor + 1; k < count; ++k)
        table[k] = table[k - 1] + adaptive_simpson(chi, node(k - 1), node(k), piece, 1);
    for (std::size_t k = anchor; k-- > 0;)
        table[k] = table[k + 1] - adaptive_simpson(chi, node(k), node(k + 1), piece, 1);
    return table;
}

}  // namespace

double chi(double t) {
    if (std::fabs(t - std::round(t)) <= integer_cutoff) return 0.0;
    const double s = std::sin(std::numbers::pi * t);
    return s * std::exp(-1.0 / (s * s));
}

double chi_integral(double a, double b, const quadrature_spec& q) {
    return adaptive_simpson(chi, a, b, q);
}

double chi_primitive(double x, const quadrature_spec& q) {
    if (!std::isfinite(x)) throw domain_error("chi_primitive requires a finite argument");
    const double v = std::fabs(x - 2.0 * std::round(0.5 * x));
    return chi_integral(0.0, v, q);
}

double psi1(double x, const constants& k) {
    return normalized_sqrt(chi_primitive(1.0 + x, k.quadrature), k.A);
}

double psi2(double x, const constants& k) {
    return normalized_sqrt(chi_primitive(x, k.quadrature), k.A);
}

constants compute_constants(const quadrature_spec& q, std::size_t sup_grid_points) {
    validate(q);
    if (sup_grid_points < 10000) throw parameter_error("sup_grid_points must be >= 10^4");

    constants k;
    k.quadrature = q;
    k.sup_grid_points = sup_grid_points;
    k.A = chi_integral(0.0, 1.0, q);
    if (!(k.A > 0.0)) throw numerical_error("integral of chi over [0, 1] is not positive");

    // Coarse grid x_j = -2 + j h. The half-step table z_m = -2 - h + m h/2 holds
    // every abscissa the two central differences need: x_j = z_{2j+2}.
    const std::size_t n = sup_grid_points;
    const double h = 4.0 / static_cast<double>(n - 1);
    const double hf = 0.5 * h;
    const std::size_t m = 2 * n + 3;
    const double z0 = -2.0 - h;

    const auto p2 = primitive_table(z0, hf, m, q);
    const auto p1 = primitive_table(1.0 + z0, hf, m, q);

    std::vector<double> g1(m), g2(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double z = z0 + hf * static_cast<double>(i);
        const double sh = std::sinh(z);
        g1[i] = sh * normalized_sqrt(p1[i], k.A);
        g2[i] = sh * normalized_sqrt(p2[i], k.A);
    }

    auto sup_scan = [&](const std::vector<double>& g, std::size_t offset, double step) {
        double best = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t c = 2 * j + 2;
            const double d = (g[c + offset] - g[c - offset]) / (2.0 * step);
            if (!std::isfinite(d)) throw numerical_error("non-finite derivative sample in sup-norm scan");
            best = std::max(best, std::fabs(d));
        }
        return best;
    };
    k.G1_coarse = sup_scan(g1, 2, h);
    k.G2_coarse = sup_scan(g2, 2, h);
    k.G1 = sup_scan(g1, 1, hf);
    k.G2 = sup_scan(g2, 1, hf);

    auto rel = [](double a, double b) { return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b)); };
    k.sup_scan_stable = rel(k.G1, k.G1_coarse) <= sup_stability_rtol && rel(k.G2, k.G2_coarse) <= sup_stability_rtol;

    k.c = 2.0 * std::max(k.G1, k.G2);
    k.epsilon = (k.G1 * k.G1 + k.G2 * k.G2) / (k.c * k.c);
    return k;
}

std::array<double, 4> h(double x, double y, const constants& k) {
    const double scale = std::sinh(x) / k.c;
    const double p1 = psi1(x, k), p2 = psi2(x, k);
    const double cy = std::cos(k.c * y), sy = std::sin(k.c * y);
    return {scale * p1 * cy, scale * p1 * sy, scale * p2 * cy, scale * p2 * sy};
}

vec2 psi_coords(double x, double y) {
    return {std::asinh(y * std::exp(x)), 0.5 * std::log(std::exp(-2.0 * x) + y * y)};
}

std::array<double, 6> f0(double x, double y, const constants& k) {
    const vec2 p = psi_coords(x, y);
    const auto tail = h(p[0], p[1], k);
    return {std::sqrt(1.0 - k.epsilon * k.epsilon) * p[0], p[1], tail[0], tail[1], tail[2], tail[3]};
}

std::vector<double> f_general(double x, std::span<const double> ys, const constants& k) {
    if (ys.empty()) throw parameter_error("f_general needs n >= 2 (at least one y coordinate)");
    const double root = std::sqrt(static_cast<double>(ys.size()));
    const double kappa = 1.0 / root;
    std::vector<double> out;
    out.reserve(6 * ys.size());
    for (double y : ys) {
        for (double v : f0(x, root * y, k)) out.push_back(kappa * v);
    }
    return out;
}

point_cloud embed_cloud(const point_cloud& cloud, const constants& k, unsigned threads) {
    if (cloud.chart() != chart::horocyclic_h2)
        throw chart_error("embed_cloud expects a horocyclic-h2 cloud, got " + std::string(to_string(cloud.chart())));
    std::vector<double> out(6 * cloud.size());
    parallel_for(cloud.size(), threads, [&](std::size_t i) {
        const auto r = cloud.row(i);
        const auto v = f0(r[0], r[1], k);
        std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(6 * i));
    });
    return point_cloud(std::move(out), 6, chart::ambient_e6);
}

pullback_report pullback_metric_diagnostic(double x, double y, double step, const constants& k) {
    if (!(step > 0.0)) throw parameter_error("pullback step must be positive");
    const auto xp = f0(x + step, y, k), xm = f0(x - step, y, k);
    const auto yp = f0(x, y + step, k), ym = f0(x, y - step, k);
    std::array<double, 6> jx{}, jy{};
    for (int i = 0; i < 6; ++i) {
        jx[i] = (xp[i] - xm[i]) / (2.0 * step);
        jy[i] = (yp[i] - ym[i]) / (2.0 * step);
    }
    double gxx = 0.0, gxy = 0.0, gyy = 0.0;
    for (int i = 0; i < 6; ++i) {
        gxx += jx[i] * jx[i];
        gxy += jx[i] * jy[i];
        gyy += jy[i] * jy[i];
    }
    pullback_report rep;
    rep.x = x;
    rep.y = y;
    rep.metric = {{{gxx, gxy}, {gxy, gyy}}};
    const double dxx = gxx - 1.0, dyy = gyy - std::exp(2.0 * x);
    rep.deviation = std::sqrt(dxx * dxx + 2.0 * gxy * gxy + dyy * dyy);
    if (!std::isfinite(rep.deviation)) throw numerical_error("non-finite pullback metric");
    return rep;
}

}  // namespace ghm::blanusa
