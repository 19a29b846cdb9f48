#include "ghm/evaluator.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

#include "ghm/error.hpp"

namespace ghm {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& text, const std::string& context) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw evaluation_error(context + ": cannot parse '" + text + "' as a real number");
    return v;
}

double checked(double v, const product_signature& node) {
    if (!std::isfinite(v)) throw evaluation_error("non-finite value for node " + node.canonical_key());
    return v;
}

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    return out + "'";
}

}  // namespace

table_evaluator::table_evaluator(std::map<std::string, double> values, std::string source)
    : source_(std::move(source)) {
    for (auto& [k, v] : values) values_[product_signature::parse(k).canonical_key()] = v;
}

table_evaluator table_evaluator::from_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open evaluator table '" + path.string() + "'");
    std::map<std::string, double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto comma = t.find(',');
        if (comma == std::string::npos) throw io_error("line " + std::to_string(line_no) + ": expected key,value");
        const auto key = trim(std::string_view(t).substr(0, comma));
        const auto value = trim(std::string_view(t).substr(comma + 1));
        if (line_no == 1 && key == "canonical_key") continue;  // optional header
        const auto canonical = product_signature::parse(key).canonical_key();
        try {
            values[canonical] = parse_real(value, path.string() + ":" + std::to_string(line_no));
        } catch (const evaluation_error& e) {
            throw io_error(e.what());
        }
    }
    return table_evaluator(std::move(values), path.string());
}

double table_evaluator::evaluate(const product_signature& node) const {
    const auto it = values_.find(node.canonical_key());
    if (it == values_.end()) throw evaluation_error("no value for node " + node.canonical_key() + " in " + source_);
    return checked(it->second, node);
}

command_evaluator::command_evaluator(std::string command, bool thread_safe)
    : command_(std::move(command)), thread_safe_(thread_safe) {
    if (command_.empty()) throw parameter_error("empty evaluator command");
}

double command_evaluator::evaluate(const product_signature& node) const {
    const std::string full = command_ + " " + shell_quote(node.canonical_key());
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(full.c_str(), "r"), pclose);
    if (!pipe) throw evaluation_error("cannot spawn evaluator command for node " + node.canonical_key());
    std::string output;
    std::array<char, 256> buf{};
    while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe.get())) output += buf.data();
    const int status = pclose(pipe.release());
    if (status != 0)
        throw evaluation_error("evaluator command failed (status " + std::to_string(status) + ") for node " +
                               node.canonical_key());
    return checked(parse_real(trim(output), "node " + node.canonical_key()), node);
}

synthetic_evaluator::synthetic_evaluator(std::string name) : name_(std::move(name)) {
    static constexpr std::array<std::string_view, 5> known{"factor-count", "constant", "euclidean-count",
                                                           "spherical-count", "hyperbolic-count"};
    if (std::find(known.begin(), known.end(), name_) == known.end())
        throw parameter_error("unknown synthetic evaluator '" + name_ + "'");
}

double synthetic_evaluator::evaluate(const product_signature& node) const {
    const auto c = node.counts();
    if (name_ == "factor-count") return static_cast<double>(node.size());
    if (name_ == "constant") return 0.0;
    if (name_ == "euclidean-count") return c[0];
    if (name_ == "spherical-count") return c[1];
    return c[2];
}

std::unique_ptr<evaluator> make_evaluator(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos)
        throw parameter_error("evaluator must be table:PATH, cmd:COMMAND or synthetic:NAME");
    const auto kind = spec.substr(0, colon);
    const std::string arg(spec.substr(colon + 1));
    if (kind == "table") return std::make_unique<table_evaluator>(table_evaluator::from_csv(arg));
    if (kind == "cmd") return std::make_unique<command_evaluator>(arg);
    if (kind == "synthetic") return std::make_unique<synthetic_evaluator>(arg);
    throw parameter_error("unknown evaluator kind '" + std::string(kind) + "'");
}

}  // namespace ghm
