#pragma once

#include <stdexcept>
#include <string>

namespace zi {

// A documented precondition of an operation was not met by the caller.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A function's values violate a hypothesis the operation relies on
// (e.g. |f(p)| > kappa, or |Lambda_f| > kappa * Lambda).
class ContractViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The requested table would exceed the configured memory budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Quadrature did not converge, or an evaluation point is too close to the
// edge of the region where the truncation is controlled.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace zi
