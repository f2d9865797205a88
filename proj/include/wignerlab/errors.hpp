#pragma once

#include <stdexcept>
#include <string>

namespace wigner {

/// Raised when an input violates an operation's precondition.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when a numerical procedure fails (non-convergence, broken invariant).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace wigner
