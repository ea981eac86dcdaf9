#pragma once

#include <stdexcept>
#include <string>

namespace gupscat {

// Bad physical input (negative mass, k <= 0, angle out of range, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed CLI flags or config file. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An iterative or adaptive scheme failed to reach its tolerance. Carries the
// best estimate so callers can report how far off it was.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double estimate, double error_estimate)
        : std::runtime_error(what), estimate_(estimate), error_estimate_(error_estimate) {}

    double estimate() const noexcept { return estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double estimate_;
    double error_estimate_;
};

// |sin delta| came out above 1: the first-order phase formula left its domain
// of validity. Carries the raw value.
class BornValidityError : public std::runtime_error {
public:
    BornValidityError(const std::string& what, double raw_sin)
        : std::runtime_error(what), raw_sin_(raw_sin) {}

    double raw_sin() const noexcept { return raw_sin_; }

private:
    double raw_sin_;
};

// Two supposedly equivalent internal routes disagreed. Maps to exit code 4.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gupscat
