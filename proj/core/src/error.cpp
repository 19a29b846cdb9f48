#include "ghm/error.hpp"

namespace ghm {

const char* to_string(error_kind kind) noexcept {
    switch (kind) {
    case error_kind::parameter: return "parameter";
    case error_kind::domain: return "domain";
    case error_kind::chart: return "chart";
    case error_kind::numerical: return "numerical";
    case error_kind::convergence: return "convergence";
    case error_kind::io: return "io";
    case error_kind::evaluation: return "evaluation";
    }
    return "unknown";
}

}  // namespace ghm
