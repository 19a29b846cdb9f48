#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "ghm/geometry.hpp"

namespace ghm {

enum class provenance { analytic_constant, computed, user_supplied };

std::string_view to_string(provenance p);
provenance parse_provenance(std::string_view text);

struct table_entry {
    double value = 0.0;
    provenance source = provenance::computed;

    friend bool operator==(const table_entry&, const table_entry&) = default;
};

// Published two-decimal estimates between the unit balls.
inline constexpr double published_gh_e2_s2 = 0.23;
inline constexpr double published_gh_e2_h2 = 0.77;
inline constexpr double published_gh_s2_h2 = 0.84;

// Symmetric model-space distance table with a zero diagonal; off-diagonal
// values live in [0, 1].
class distance_table {
public:
    // (E2,S2) = 0.23 analytic constant, (E2,H2) = 0.77, (S2,H2) = 0.84.
    static distance_table defaults();

    double get(model_space a, model_space b) const;
    const table_entry& entry(model_space a, model_space b) const;
    void set(model_space a, model_space b, double value, provenance source);

    friend bool operator==(const distance_table&, const distance_table&) = default;

private:
    static std::size_t slot(model_space a, model_space b);
    std::array<table_entry, 3> entries_{};  // (E,S), (E,H), (S,H)
};

// d_GH(E2, S2) between unit balls, taken as the analytic value 0.23.
double analytic_gh_e2_s2();

// Distance between product signatures from model-space distances:
//   equal multisets -> 0;
//   same size, one factor swapped M1 -> M2 -> table(M1, M2);
//   sizes differ by one, smaller contained in larger -> 1;
//   anything else -> nullopt (not adjacent).
std::optional<double> signature_distance(const product_signature& a, const product_signature& b,
                                         const distance_table& table);

}  // namespace ghm
