#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ksf/errors.hpp"

namespace ksf {

/// Result of an infinite-sum evaluator.
struct SeriesValue {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t terms_used = 0;
    bool converged = false;
};

/// Result of the adaptive integrator.
struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t subdivisions = 0;
};

namespace constants {
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
inline constexpr double ln2 = 0.69314718055994530941723212145817657;
inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double ln_pi = 1.14472988584940017414342735135305871;
inline constexpr double half_ln_2pi = 0.91893853320467274178032973640561764;
/// Glaisher-Kinkelin A. Acceptance checks only; no evaluator reads it.
inline constexpr double glaisher_A = 1.28242712910062263687534256886979172;
}  // namespace constants

/// The deformation parameter k > 0 shared by every k-function.
class KScale {
public:
    explicit KScale(double k) : k_(k) {
        if (!(std::isfinite(k) && k > 0.0)) {
            throw DomainError("KScale: k must be finite and > 0, got " + std::to_string(k));
        }
    }

    double value() const noexcept { return k_; }
    double operator*() const noexcept { return k_; }

private:
    double k_;
};

/// Ordered parameter list of a grid point, e.g. {{"k", 2}, {"x", 0.35}}.
using Params = std::vector<std::pair<std::string, double>>;

enum class Verdict { pass, fail, skip };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "PASS";
        case Verdict::fail: return "FAIL";
        case Verdict::skip: return "SKIP";
    }
    return "?";
}

/// One grid-point verdict of an identity check.
struct IdentityReport {
    std::string identity_id;
    Params params;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    Verdict verdict = Verdict::skip;
    std::string note;
};

inline double relative_difference(double lhs, double rhs) {
    const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
    if (scale == 0.0) return 0.0;
    return std::fabs(lhs - rhs) / scale;
}

}  // namespace ksf
