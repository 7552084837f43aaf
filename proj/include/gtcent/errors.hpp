#pragma once

#include <stdexcept>
#include <string>

namespace gtcent {

/// Input or argument rejected by a precondition or file-content check.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Instance exceeds a hard size cap (n > 64, enumeration limits).
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace gtcent
