#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "ghm/geometry.hpp"

namespace ghm {

// Node-value function for graph searches. Implementations must return a
// finite value and be deterministic for a fixed node within one run.
class evaluator {
public:
    virtual ~evaluator() = default;
    virtual double evaluate(const product_signature& node) const = 0;
    virtual bool thread_safe() const { return true; }
    virtual std::string describe() const = 0;
};

// Values looked up by canonical key; a missing node is an evaluation error.
class table_evaluator final : public evaluator {
public:
    explicit table_evaluator(std::map<std::string, double> values, std::string source = "inline");
    // CSV rows `canonical_key,value`; keys are canonicalized on load.
    static table_evaluator from_csv(const std::filesystem::path& path);

    double evaluate(const product_signature& node) const override;
    std::string describe() const override { return "table:" + source_; }

private:
    std::map<std::string, double> values_;
    std::string source_;
};

// Runs `<command> <canonical_key>` through the shell and parses one real number
// from its standard output.
class command_evaluator final : public evaluator {
public:
    explicit command_evaluator(std::string command, bool thread_safe = false);

    double evaluate(const product_signature& node) const override;
    bool thread_safe() const override { return thread_safe_; }
    std::string describe() const override { return "cmd:" + command_; }

private:
    std::string command_;
    bool thread_safe_;
};

// Built-in node functions: factor-count, constant, euclidean-count,
// spherical-count, hyperbolic-count.
class synthetic_evaluator final : public evaluator {
public:
    explicit synthetic_evaluator(std::string name);

    double evaluate(const product_signature& node) const override;
    std::string describe() const override { return "synthetic:" + name_; }

private:
    std::string name_;
};

// Parses `table:PATH`, `cmd:COMMAND` or `synthetic:NAME`.
std::unique_ptr<evaluator> make_evaluator(std::string_view spec);

}  // namespace ghm
