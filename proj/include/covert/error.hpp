#pragma once

#include <stdexcept>
#include <string>

namespace covert {

/// Invalid argument or scenario field. `key()` names the offending parameter.
class ParameterError : public std::invalid_argument {
public:
    ParameterError(std::string key, const std::string& what)
        : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

protected:
    struct Verbatim {};
    ParameterError(Verbatim, std::string key, const std::string& message)
        : std::invalid_argument(message), key_(std::move(key)) {}

private:
    std::string key_;
};

/// Argument outside the support of a formula (below a support floor, inside a guard zone, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Path-loss or antenna singularity (r = 0 for the unbounded law, phi = 0).
class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Moment or integral that does not exist for the given exponent.
class DivergenceError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Numerical routine failed to converge or produced a non-finite value.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Detector threshold cannot be formed (e.g. every statistic identical).
class ThresholdError : public NumericError {
public:
    using NumericError::NumericError;
};

namespace detail {

inline void require(bool ok, const char* key, const char* what) {
    if (!ok) throw ParameterError(key, what);
}

}  // namespace detail
}  // namespace covert
