#pragma once

#include <stdexcept>
#include <string>

namespace famalab {

/// Invalid user-facing configuration (bad JSON, inconsistent distances, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A function was called outside its mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Series or quadrature failed to reach the requested accuracy, or a value
/// left the representable range.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OverflowError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace famalab
