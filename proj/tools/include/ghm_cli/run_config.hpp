#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "ghm/blanusa.hpp"
#include "ghm/gh_estimate.hpp"
#include "ghm/quadrature.hpp"
#include "ghm/serialization.hpp"

namespace ghm::cli {

enum class output_format { json, csv };

std::string_view to_string(output_format f);
output_format parse_output_format(std::string_view text);

// Everything a command needs besides its own positional arguments. Loaded
// from an optional JSON file; command-line flags override file values.
struct run_config {
    quadrature_spec quadrature;
    std::size_t sup_grid_points = blanusa::default_sup_grid_points;
    candidate_grid_spec grid;  // its coarse / fine resolutions are the sampling specs
    std::filesystem::path cache_path = "ghm_cache.json";
    output_format format = output_format::json;
    unsigned threads = 0;  // 0: hardware concurrency
    std::uint64_t seed = 0;  // early-break shuffles only
};

void validate(const run_config& cfg);

json to_json(const run_config& cfg);

// Keys absent from `j` keep the value they have in `base`.
run_config config_from_json(const json& j, run_config base = {});
run_config load_config(const std::filesystem::path& path);

// "RxT" -> {R, T}
grid_resolution parse_resolution(std::string_view text);

// Hex digests of the settings that determine cached values.
std::string constants_digest(const run_config& cfg);
std::string estimate_digest(const run_config& cfg, gh_pair pair);

}  // namespace ghm::cli
