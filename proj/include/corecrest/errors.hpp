// Error types shared across the library. The CLI maps these to exit codes.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace corecrest {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file. Carries a 1-based line number when known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Bad parameter or configuration (infeasible m, mismatched k, missing input path).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Inconsistent data relationships (non-disjoint clustering where disjoint is
// required, cluster ids that do not match across reports).
class InputError : public Error {
public:
    using Error::Error;
};

// Modularity is undefined on a graph with no undirected edges.
class UndefinedModularityError : public Error {
public:
    using Error::Error;
};

}  // namespace corecrest
