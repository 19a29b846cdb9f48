#include "ghm/distance_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "ghm/error.hpp"

namespace ghm {

std::string_view to_string(provenance p) {
    switch (p) {
    case provenance::analytic_constant: return "analytic-constant";
    case provenance::computed: return "computed";
    case provenance::user_supplied: return "user-supplied";
    }
    return "computed";
}

provenance parse_provenance(std::string_view text) {
    for (auto p : {provenance::analytic_constant, provenance::computed, provenance::user_supplied})
        if (to_string(p) == text) return p;
    throw parameter_error("unknown provenance '" + std::string(text) + "'");
}

distance_table distance_table::defaults() {
    distance_table t;
    t.set(model_space::e2(), model_space::s2(), analytic_gh_e2_s2(), provenance::analytic_constant);
    t.set(model_space::e2(), model_space::h2(), published_gh_e2_h2, provenance::computed);
    t.set(model_space::s2(), model_space::h2(), published_gh_s2_h2, provenance::computed);
    return t;
}

std::size_t distance_table::slot(model_space a, model_space b) {
    if (a == b) throw parameter_error("distance table has no slot for a diagonal pair");
    const int i = std::min(static_cast<int>(a.kind()), static_cast<int>(b.kind()));
    const int j = std::max(static_cast<int>(a.kind()), static_cast<int>(b.kind()));
    return static_cast<std::size_t>(i + j - 1);  // (0,1)->0, (0,2)->1, (1,2)->2
}

double distance_table::get(model_space a, model_space b) const {
    if (a == b) return 0.0;
    return entries_[slot(a, b)].value;
}

const table_entry& distance_table::entry(model_space a, model_space b) const { return entries_[slot(a, b)]; }

void distance_table::set(model_space a, model_space b, double value, provenance source) {
    if (!(value >= 0.0 && value <= 1.0))
        throw parameter_error("distance " + std::to_string(value) + " for (" + a.key() + ", " + b.key() +
                              ") is outside [0, 1]");
    entries_[slot(a, b)] = {value, source};
}

double analytic_gh_e2_s2() { return published_gh_e2_s2; }

std::optional<double> signature_distance(const product_signature& a, const product_signature& b,
                                         const distance_table& table) {
    const auto ca = a.counts();
    const auto cb = b.counts();
    int surplus_a = 0, surplus_b = 0;  // factors in a not matched by b, and vice versa
    int only_a = -1, only_b = -1;
    for (int k = 0; k < 3; ++k) {
        const int diff = ca[static_cast<std::size_t>(k)] - cb[static_cast<std::size_t>(k)];
        if (diff > 0) {
            surplus_a += diff;
            only_a = k;
        } else if (diff < 0) {
            surplus_b -= diff;
            only_b = k;
        }
    }
    if (surplus_a == 0 && surplus_b == 0) return 0.0;
    if (surplus_a == 1 && surplus_b == 1)
        return table.get(model_space(static_cast<space_kind>(only_a)), model_space(static_cast<space_kind>(only_b)));
    if ((surplus_a == 1 && surplus_b == 0) || (surplus_a == 0 && surplus_b == 1)) return 1.0;
    return std::nullopt;
}

}  // namespace ghm
