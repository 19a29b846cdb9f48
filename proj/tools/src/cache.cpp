#include "ghm_cli/cache.hpp"

#include <fstream>

#include "ghm/error.hpp"
#include "ghm/serialization.hpp"

namespace ghm::cli {

const gh_estimate* distance_cache::find_estimate(const std::string& digest, gh_pair pair) const {
    for (const auto& c : estimates)
        if (c.digest == digest && c.estimate.pair == pair) return &c.estimate;
    return nullptr;
}

void distance_cache::store_estimate(const std::string& digest, const gh_estimate& e) {
    for (auto& c : estimates) {
        if (c.digest == digest && c.estimate.pair == e.pair) {
            c.estimate = e;
            return;
        }
    }
    estimates.push_back({digest, e});
}

namespace {

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path.string());
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        throw io_error("cannot parse " + path.string() + ": " + e.what());
    }
}

}  // namespace

distance_cache load_cache(const std::filesystem::path& path) {
    distance_cache cache;
    if (!std::filesystem::exists(path)) return cache;
    const json j = read_json_file(path);
    try {
        if (j.contains("constants") && !j["constants"].is_null()) {
            cache.constants = constants_from_json(j["constants"]);
            cache.constants_digest = j["constants"].value("digest", "");
        }
        for (const auto& e : j.value("estimates", json::array()))
            cache.estimates.push_back({e.value("digest", ""), estimate_from_json(e)});
        if (j.contains("table")) cache.table = table_from_json(j["table"]);
    } catch (const std::exception& e) {
        throw io_error("malformed distance cache " + path.string() + ": " + e.what());
    }
    return cache;
}

void save_cache(const std::filesystem::path& path, const distance_cache& cache) {
    json j;
    if (cache.constants) {
        j["constants"] = to_json(*cache.constants);
        j["constants"]["digest"] = cache.constants_digest;
    } else {
        j["constants"] = nullptr;
    }
    j["estimates"] = json::array();
    for (const auto& c : cache.estimates) {
        json e = to_json(c.estimate);
        e["digest"] = c.digest;
        j["estimates"].push_back(std::move(e));
    }
    j["table"] = to_json(cache.table);

    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw io_error("cannot write distance cache " + path.string());
        out << j.dump(2) << '\n';
        if (!out) throw io_error("cannot write distance cache " + path.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw io_error("cannot replace distance cache " + path.string() + ": " + ec.message());
}

distance_table load_table_file(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    try {
        return table_from_json(j.contains("table") ? j["table"] : j);
    } catch (const std::exception& e) {
        throw io_error("malformed distance table " + path.string() + ": " + e.what());
    }
}

}  // namespace ghm::cli
