#pragma once

#include <stdexcept>
#include <string>

namespace ksf {

/// Argument outside the mathematical domain of the function (x <= 0 for digamma, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Argument at (or within the guard distance of) a pole.
class PoleError : public DomainError {
public:
    explicit PoleError(const std::string& what) : DomainError(what) {}
};

/// Result not representable in binary64.
class RangeError : public std::range_error {
public:
    explicit RangeError(const std::string& what) : std::range_error(what) {}
};

/// Invalid structural parameter (c a nonpositive integer in 2F1, n out of range, ...).
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Series hit its term cap, quadrature hit its depth cap, or a root solver stalled.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate) {}
    explicit ConvergenceError(const std::string& what)
        : ConvergenceError(what, 0.0) {}

    double best_estimate() const noexcept { return best_estimate_; }

private:
    double best_estimate_;
};

}  // namespace ksf
