#pragma once

#include <stdexcept>
#include <string>

namespace mfs {

// Every error the pipeline can raise belongs to one of these classes; the CLI
// maps them to machine-readable JSON on stderr.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error("io", msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse", msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("config", msg) {}
};

struct ParameterError : Error {
    explicit ParameterError(const std::string& msg) : Error("parameter", msg) {}
};

struct ConvergenceError : Error {
    ConvergenceError(const std::string& msg, double residual)
        : Error("convergence", msg), residual(residual) {}
    double residual;
};

// Degenerate input (empty sample, zero variance, zero denominator, ...).
struct DegenerateError : Error {
    explicit DegenerateError(const std::string& msg) : Error("degenerate", msg) {}
};

}  // namespace mfs
