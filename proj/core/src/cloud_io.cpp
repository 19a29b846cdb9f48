#include "ghm/cloud_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ghm/error.hpp"

namespace ghm {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(std::string_view token, std::size_t line) {
    while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
    while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r'))
        token.remove_suffix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw io_error("bad number '" + std::string(token) + "' on line " + std::to_string(line));
    return value;
}

}  // namespace

void write_cloud_csv(std::ostream& out, const point_cloud& cloud) {
    out << "# chart=" << to_string(cloud.chart()) << " dim=" << cloud.dim() << '\n';
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto r = cloud.row(i);
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (k) out << ',';
            out << format_double(r[k]);
        }
        out << '\n';
    }
}

point_cloud read_cloud_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    chart c = chart::ambient;
    std::size_t dim = 0;
    std::vector<double> coords;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::istringstream header(line.substr(1));
            std::string field;
            while (header >> field) {
                if (field.rfind("chart=", 0) == 0) c = parse_chart(field.substr(6));
                else if (field.rfind("dim=", 0) == 0) dim = static_cast<std::size_t>(parse_double(field.substr(4), line_no));
            }
            continue;
        }
        std::size_t row_dim = 0;
        std::string_view rest(line);
        while (true) {
            const auto comma = rest.find(',');
            coords.push_back(parse_double(rest.substr(0, comma), line_no));
            ++row_dim;
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (dim == 0) dim = row_dim;
        if (row_dim != dim)
            throw io_error("line " + std::to_string(line_no) + " has " + std::to_string(row_dim) +
                           " columns, expected " + std::to_string(dim));
    }
    if (coords.empty()) throw io_error("cloud file contains no points");
    return point_cloud(std::move(coords), dim, c);
}

void save_cloud_csv(const std::filesystem::path& path, const point_cloud& cloud) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
    write_cloud_csv(out, cloud);
    if (!out) throw io_error("failed writing '" + path.string() + "'");
}

point_cloud load_cloud_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path.string() + "'");
    return read_cloud_csv(in);
}

std::string cloud_to_json(const point_cloud& cloud) {
    std::ostringstream out;
    out << "{\"metadata\":{\"chart\":\"" << to_string(cloud.chart()) << "\",\"dim\":" << cloud.dim()
        << ",\"count\":" << cloud.size() << "},\"points\":[";
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (i) out << ',';
        out << '[';
        auto r = cloud.row(i);
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (k) out << ',';
            out << format_double(r[k]);
        }
        out << ']';
    }
    out << "]}";
    return out.str();
}

point_cloud cloud_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("invalid cloud JSON: ") + e.what());
    }
    const auto& meta = j.at("metadata");
    std::vector<std::vector<double>> rows = j.at("points").get<std::vector<std::vector<double>>>();
    auto cloud = point_cloud::from_rows(rows, parse_chart(meta.at("chart").get<std::string>()));
    if (meta.at("dim").get<std::size_t>() != cloud.dim()) throw io_error("cloud JSON dim does not match rows");
    return cloud;
}

}  // namespace ghm
