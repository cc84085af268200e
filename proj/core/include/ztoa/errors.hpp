#pragma once

#include <stdexcept>
#include <string>

namespace ztoa {

/// Scenario or precondition validation failure (CLI exit code 2).
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical abort: probability reached a grid boundary (CLI exit code 3).
class boundary_leak_error : public std::runtime_error {
public:
    explicit boundary_leak_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ztoa
