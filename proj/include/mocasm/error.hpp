#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mocasm {

/// Caller passed a value outside the documented range (maps to CLI exit 1).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input data is malformed. Carries the 1-based line number when known (exit 2).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A documented precondition of an internal operation was broken.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Something that should be unreachable happened (exit 3).
class InternalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mocasm
