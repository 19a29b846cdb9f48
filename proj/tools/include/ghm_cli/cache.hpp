#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ghm/blanusa.hpp"
#include "ghm/distance_table.hpp"
#include "ghm/gh_estimate.hpp"

namespace ghm::cli {

struct cached_estimate {
    std::string digest;
    gh_estimate estimate;
};

// On-disk distance cache: {constants, estimates, table}. Entries carry the
// digest of the settings that produced them; lookups with another digest miss.
struct distance_cache {
    std::optional<blanusa::constants> constants;
    std::string constants_digest;
    std::vector<cached_estimate> estimates;
    distance_table table = distance_table::defaults();

    const gh_estimate* find_estimate(const std::string& digest, gh_pair pair) const;
    void store_estimate(const std::string& digest, const gh_estimate& e);
};

// A missing file yields an empty cache; an unreadable or malformed one is an io_error.
distance_cache load_cache(const std::filesystem::path& path);
void save_cache(const std::filesystem::path& path, const distance_cache& cache);

// Reads a distance table from a cache file or from a bare table object.
distance_table load_table_file(const std::filesystem::path& path);

}  // namespace ghm::cli
