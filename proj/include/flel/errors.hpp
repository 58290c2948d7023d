#pragma once

#include <stdexcept>
#include <string>

namespace flel {

// Malformed input files (CSV/ARFF/JSON). CLI maps this to exit code 3.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Data that parses but violates an invariant. CLI maps this to exit code 3.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid experiment plan or parameters. CLI maps this to exit code 2.
class PlanError : public std::runtime_error {
public:
    explicit PlanError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace flel
