#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

// Invalid user-supplied configuration or operands (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical acceptance filter refused to proceed (CLI exit code 3),
// e.g. an unresolvable band crossing or a failed spectral stage.
class FilterError : public std::runtime_error {
public:
    explicit FilterError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qwalk
