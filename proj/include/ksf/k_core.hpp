#pragma once

// The k-deformed gamma family. Every function here reduces to the classical
// one through Gamma_k(x) = k^(x/k - 1) Gamma(x/k); the direct series forms are
// kept as independent cross-checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "ksf/errors.hpp"
#include "ksf/scalar_core.hpp"
#include "ksf/types.hpp"

namespace ksf {

inline constexpr double pole_guard = 1e-8;

namespace detail {

inline void check_k_pole(double k, double x, const char* who) {
    const double q = x / k;
    if (q <= pole_guard && std::fabs(q - std::nearbyint(q)) < pole_guard) {
        throw PoleError(std::string(who) + ": x = " + std::to_string(x) + " is at a pole (x/k = " +
                        std::to_string(std::nearbyint(q)) + ")");
    }
}

inline void check_positive(double x, const char* who) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(who) + ": x must be finite and > 0, got " + std::to_string(x));
    }
}

}  // namespace detail

/// Gamma_k(x) = k^(x/k - 1) Gamma(x/k). Negative non-pole arguments go through
/// the reciprocal gamma, so no recurrence error builds up.
inline double gamma_k(KScale k, double x) {
    if (!std::isfinite(x)) throw DomainError("gamma_k: x must be finite");
    const double kv = k.value();
    detail::check_k_pole(kv, x, "gamma_k");
    const double q = x / kv;
    double value;
    if (q > 0.0) {
        value = std::exp((q - 1.0) * std::log(kv) + ln_gamma(q));
    } else {
        value = std::pow(kv, q - 1.0) / rgamma(q);
    }
    if (!std::isfinite(value)) throw RangeError("gamma_k: overflow at x = " + std::to_string(x));
    return value;
}

/// ln Gamma_k(x) for x > 0.
inline double ln_gamma_k(KScale k, double x) {
    detail::check_positive(x, "ln_gamma_k");
    const double kv = k.value();
    const double q = x / kv;
    return (q - 1.0) * std::log(kv) + ln_gamma(q);
}

/// 1/Gamma_k(x) = k^(1 - x/k) / Gamma(x/k); zero at x = 0, -k, -2k, ...
inline double rgamma_k(KScale k, double x) {
    if (!std::isfinite(x)) throw DomainError("rgamma_k: x must be finite");
    const double kv = k.value();
    const double q = x / kv;
    const double r = rgamma(q);
    if (r == 0.0) return 0.0;
    return std::pow(kv, 1.0 - q) * r;
}

/// psi_k(x) = ln k / k + psi(x/k) / k.
inline double psi_k(KScale k, double x) {
    detail::check_positive(x, "psi_k");
    const double kv = k.value();
    return (std::log(kv) + digamma(x / kv)) / kv;
}

/// (ln k - gamma)/k - 1/x + sum_{n>=1} x / (nk (nk + x)), summed directly. The tail
/// after N terms lies between (1/k) ln(1 + x/((N+1)k)) and (1/k) ln(1 + x/(Nk));
/// its midpoint is added and the half-width reported.
inline SeriesValue psi_k_series(KScale k, double x, double tol, std::size_t cap = 1000000) {
    detail::check_positive(x, "psi_k_series");
    if (!(tol > 0.0)) throw DomainError("psi_k_series: tol must be > 0");
    const double kv = k.value();
    auto tail_bounds = [&](double n) {
        return std::pair{std::log1p(x / ((n + 1.0) * kv)) / kv, std::log1p(x / (n * kv)) / kv};
    };
    // Half-width is about x / (2 k^2 N^2).
    auto n = static_cast<std::size_t>(std::ceil(std::sqrt(x / (2.0 * kv * kv * tol)))) + 1;
    bool converged = true;
    while (true) {
        const auto [lo, hi] = tail_bounds(static_cast<double>(n));
        if ((hi - lo) / 2.0 <= tol) break;
        if (n >= cap) {
            converged = false;
            break;
        }
        n = std::min(cap, n + n / 4 + 1);
    }
    if (n > cap) {
        n = cap;
        converged = false;
    }
    double sum = 0.0;
    for (std::size_t i = n; i >= 1; --i) {
        const double nk = static_cast<double>(i) * kv;
        sum += x / (nk * (nk + x));
    }
    const auto [lo, hi] = tail_bounds(static_cast<double>(n));
    const double value = (std::log(kv) - constants::euler_gamma) / kv - 1.0 / x + sum + (lo + hi) / 2.0;
    SeriesValue result{value, (hi - lo) / 2.0, n, converged};
    if (!converged) throw ConvergenceError("psi_k_series: term cap reached", value);
    return result;
}

/// psi_k^(m)(x) = psi^(m)(x/k) / k^(m+1).
inline double psi_k_m(KScale k, int m, double x) {
    if (m < 1) throw DomainError("psi_k_m: order must be >= 1");
    detail::check_positive(x, "psi_k_m");
    const double kv = k.value();
    return polygamma(m, x / kv) / std::pow(kv, m + 1);
}

/// (-1)^(m+1) m! sum_{n>=0} (nk + x)^(-m-1) by direct summation. The tail from N
/// on lies in [I, I + f(N)] with I = (Nk + x)^(-m) / (mk).
inline SeriesValue psi_k_m_series(KScale k, int m, double x, double tol, std::size_t cap = 1000000) {
    if (m < 1) throw DomainError("psi_k_m_series: order must be >= 1");
    detail::check_positive(x, "psi_k_m_series");
    if (!(tol > 0.0)) throw DomainError("psi_k_m_series: tol must be > 0");
    const double kv = k.value();
    const double m_fact = detail::factorial(m);
    const double p = m + 1.0;
    // Half-width m! f(N) / 2 <= tol.
    const double need = std::pow(2.0 * tol / m_fact, -1.0 / p);
    double n_real = std::max(1.0, std::ceil((need - x) / kv));
    bool converged = true;
    if (n_real > static_cast<double>(cap)) {
        n_real = static_cast<double>(cap);
        converged = false;
    }
    const auto n = static_cast<std::size_t>(n_real);
    double sum = 0.0;
    for (std::size_t i = n; i-- > 0;) sum += std::pow(static_cast<double>(i) * kv + x, -p);
    const double base = n_real * kv + x;
    const double f_n = std::pow(base, -p);
    const double integral = std::pow(base, -static_cast<double>(m)) / (m * kv);
    const double magnitude = m_fact * (sum + integral + 0.5 * f_n);
    const double value = (m % 2 == 1) ? magnitude : -magnitude;
    const double err = 0.5 * m_fact * f_n;
    if (!converged || err > tol) throw ConvergenceError("psi_k_m_series: term cap reached", value);
    return {value, err, n, true};
}

/// Right side of the k-duplication formula, 2 psi_k(2kx) - psi_k(kx) - 2 ln 2 / k,
/// which equals psi_k(kx + k/2).
inline double psi_k_duplication_rhs(KScale k, double x) {
    detail::check_positive(x, "psi_k_duplication_rhs");
    const double kv = k.value();
    return 2.0 * psi_k(k, 2.0 * kv * x) - psi_k(k, kv * x) - 2.0 * constants::ln2 / kv;
}

}  // namespace ksf
