#pragma once

#include <stdexcept>
#include <string>

namespace tfdelphi {

/// A value lies outside the domain of an operation (beta out of range, empty input, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller broke a structural precondition (shape or granularity mismatch).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace tfdelphi
