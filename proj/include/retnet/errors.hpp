#pragma once

#include <stdexcept>
#include <string>

namespace retnet {

// Bad configuration, violated precondition, or a missing pipeline stage.
// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input data (events, artifacts). The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace retnet
