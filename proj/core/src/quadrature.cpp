#include "ghm/quadrature.hpp"

namespace ghm {

void validate(const quadrature_spec& q) {
    if (q.method != "adaptive-simpson") throw parameter_error("unsupported quadrature method '" + q.method + "'");
    if (!(q.abs_tol > 0.0)) throw parameter_error("quadrature abs_tol must be positive");
    if (q.max_subdivisions < 20) throw parameter_error("quadrature max_subdivisions must be >= 20");
}

}  // namespace ghm
