#pragma once

#include <cmath>
#include <string>

#include "ghm/error.hpp"

namespace ghm {

// Only adaptive Simpson is implemented; the method field exists so cached
// settings can be compared and serialized.
struct quadrature_spec {
    std::string method = "adaptive-simpson";
    double abs_tol = 1e-10;
    int max_subdivisions = 50;  // maximum bisection depth

    friend bool operator==(const quadrature_spec&, const quadrature_spec&) = default;
};

void validate(const quadrature_spec& q);

namespace detail {

struct simpson_state {
    int max_depth;
    int min_depth;
    bool exhausted = false;
};

template <class F>
double simpson_step(F& f, double a, double fa, double m, double fm, double b, double fb, double whole, double tol,
                    int depth, simpson_state& st) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= st.min_depth && std::fabs(delta) <= 15.0 * tol) return left + right;
    if (depth >= st.max_depth) {
        st.exhausted = true;
        return left + right;
    }
    return simpson_step(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1, st) +
           simpson_step(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1, st);
}

}  // namespace detail

// Adaptive Simpson estimate of the integral of f over [a, b]. A minimum
// bisection depth guards against integrands that vanish at the first probes.
// Swapped bounds negate the result; a == b returns 0.
template <class F>
double adaptive_simpson(F&& f, double a, double b, const quadrature_spec& q, int min_depth = 4) {
    if (a == b) return 0.0;
    if (a > b) return -adaptive_simpson(f, b, a, q, min_depth);
    detail::simpson_state st{q.max_subdivisions, min_depth};
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double value = detail::simpson_step(f, a, fa, m, fm, b, fb, whole, q.abs_tol, 0, st);
    if (st.exhausted) {
        throw convergence_error("adaptive Simpson exhausted " + std::to_string(q.max_subdivisions) +
                                    " subdivision levels before reaching tolerance",
                                value);
    }
    return value;
}

}  // namespace ghm
