#pragma once

#include <stdexcept>
#include <string>

namespace lt {

// Raised when a computation cannot be carried out at the available p-adic
// precision (division by an element known only to be O(p^k), integrality
// audits that cannot be decided, ...). The CLI maps it to exit code 3.
class PrecisionError : public std::runtime_error {
public:
    explicit PrecisionError(const std::string &what) : std::runtime_error(what) {}
};

// Raised on malformed user input (bad prime, schema violations, ...).
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string &what) : std::invalid_argument(what) {}
};

} // namespace lt
