#pragma once

#include <stdexcept>
#include <string>

namespace simdef {

// Bad user input: unknown columns, malformed values, inconsistent options.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem and stream failures.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// A violated internal invariant; indicates a bug, not bad input.
class InvariantError : public std::logic_error {
public:
    explicit InvariantError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace simdef
