#include "ghm_cli/run_config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include "ghm/error.hpp"

namespace ghm::cli {

using ghm::to_json;

namespace {

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

json constants_settings(const run_config& cfg) {
    return {{"quadrature", to_json(cfg.quadrature)}, {"sup_grid_points", cfg.sup_grid_points}};
}

}  // namespace

std::string_view to_string(output_format f) {
    return f == output_format::json ? "json" : "csv";
}

output_format parse_output_format(std::string_view text) {
    if (text == "json") return output_format::json;
    if (text == "csv") return output_format::csv;
    throw parameter_error("unknown output format '" + std::string(text) + "' (expected json or csv)");
}

void validate(const run_config& cfg) {
    validate(cfg.quadrature);
    if (cfg.sup_grid_points < 10000) throw parameter_error("sup_grid_points must be >= 10^4");
    validate(cfg.grid);
    if (cfg.cache_path.empty()) throw parameter_error("cache path must not be empty");
}

json to_json(const run_config& cfg) {
    return {{"quadrature", to_json(cfg.quadrature)},
            {"sup_grid_points", cfg.sup_grid_points},
            {"grid", to_json(cfg.grid)},
            {"cache", cfg.cache_path.string()},
            {"format", to_string(cfg.format)},
            {"threads", cfg.threads},
            {"seed", cfg.seed}};
}

run_config config_from_json(const json& j, run_config base) {
    if (!j.is_object()) throw parameter_error("config must be a JSON object");
    try {
        if (j.contains("quadrature")) {
            json q = to_json(base.quadrature);
            q.update(j["quadrature"]);
            base.quadrature = quadrature_spec_from_json(q);
        }
        base.sup_grid_points = j.value("sup_grid_points", base.sup_grid_points);
        if (j.contains("grid")) {
            json g = to_json(base.grid);
            g.update(j["grid"]);
            base.grid = grid_spec_from_json(g);
        }
        if (j.contains("cache")) base.cache_path = j["cache"].get<std::string>();
        if (j.contains("format")) base.format = parse_output_format(j["format"].get<std::string>());
        base.threads = j.value("threads", base.threads);
        base.seed = j.value("seed", base.seed);
    } catch (const json::exception& e) {
        throw parameter_error(std::string("malformed config: ") + e.what());
    }
    return base;
}

run_config load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw io_error("cannot parse config file " + path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

grid_resolution parse_resolution(std::string_view text) {
    const auto x = text.find_first_of("xX");
    if (x == std::string_view::npos) throw parameter_error("grid must look like RxT, got '" + std::string(text) + "'");
    auto number = [&](std::string_view part) {
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc() || ptr != part.data() + part.size() || v == 0)
            throw parameter_error("grid must look like RxT with positive integers, got '" + std::string(text) + "'");
        return v;
    };
    return {number(text.substr(0, x)), number(text.substr(x + 1))};
}

std::string constants_digest(const run_config& cfg) {
    return fnv1a_hex(constants_settings(cfg).dump());
}

std::string estimate_digest(const run_config& cfg, gh_pair pair) {
    const json settings = {{"constants", constants_settings(cfg)}, {"grid", to_json(cfg.grid)}, {"pair", to_string(pair)}};
    return fnv1a_hex(settings.dump());
}

}  // namespace ghm::cli
