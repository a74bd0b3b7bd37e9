#pragma once

#include <stdexcept>
#include <string>

namespace plate {

/// Raised when an iterative kernel fails to converge or a computed value is
/// not finite.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when the Galerkin matrices fail their definiteness checks.
class assembly_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by the configuration reader; carries the 1-based line number when
/// the failure is syntactic (0 otherwise).
class config_error : public std::runtime_error {
public:
    config_error(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace plate
