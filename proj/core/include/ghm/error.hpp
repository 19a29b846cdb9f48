#pragma once

#include <stdexcept>
#include <string>

namespace ghm {

// Error categories map onto CLI exit codes: parameter/usage -> 1,
// numerical/convergence -> 2, io -> 3.
enum class error_kind { parameter, domain, chart, numerical, convergence, io, evaluation };

const char* to_string(error_kind kind) noexcept;

class error : public std::runtime_error {
public:
    error(error_kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    error_kind kind() const noexcept { return kind_; }

private:
    error_kind kind_;
};

struct parameter_error : error {
    explicit parameter_error(const std::string& what) : error(error_kind::parameter, what) {}
};

struct domain_error : error {
    explicit domain_error(const std::string& what) : error(error_kind::domain, what) {}
};

struct chart_error : error {
    explicit chart_error(const std::string& what) : error(error_kind::chart, what) {}
};

struct numerical_error : error {
    explicit numerical_error(const std::string& what) : error(error_kind::numerical, what) {}
};

// Raised when adaptive quadrature runs out of subdivisions; keeps the best
// estimate reached so callers can decide whether it is good enough.
class convergence_error : public error {
public:
    convergence_error(const std::string& what, double best_estimate)
        : error(error_kind::convergence, what), best_estimate_(best_estimate) {}
    double best_estimate() const noexcept { return best_estimate_; }

private:
    double best_estimate_;
};

struct io_error : error {
    explicit io_error(const std::string& what) : error(error_kind::io, what) {}
};

struct evaluation_error : error {
    explicit evaluation_error(const std::string& what) : error(error_kind::evaluation, what) {}
};

}  // namespace ghm
