#pragma once

#include <stdexcept>
#include <string>

namespace nlskp {

/// Malformed or inconsistent caller input (bad files, violated preconditions).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of an operation (negative time, bad index, off-grid shift).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure failed to reach its tolerance.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nlskp
