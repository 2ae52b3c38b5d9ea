#pragma once

// Classical (k = 1) base functions: log-gamma, reciprocal gamma, digamma,
// polygamma, integer zeta values, Gauss 2F1 on [-1, 0] and the alternating
// Lerch sums. Every k-function reduces to these.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "ksf/errors.hpp"
#include "ksf/oracles.hpp"
#include "ksf/types.hpp"

namespace ksf {

namespace detail {

// B_2, B_4, ..., B_16
inline constexpr std::array<double, 8> bernoulli_even = {
    1.0 / 6.0,      -1.0 / 30.0, 1.0 / 42.0,       -1.0 / 30.0,
    5.0 / 66.0,     -691.0 / 2730.0, 7.0 / 6.0,    -3617.0 / 510.0};

// Euler-Maclaurin terms used (through B_14).
inline constexpr int em_bernoulli_terms = 7;
inline constexpr int em_base_terms = 20;

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::nearbyint(x); }

}  // namespace detail

/// sum_{n>=0} (n + a)^(-s) for integer s >= 2 and a > 0, by Euler-Maclaurin
/// after 20 explicit terms.
inline double hurwitz_zeta_int(int s, double a) {
    if (s < 2) throw DomainError("hurwitz_zeta_int: s must be >= 2");
    if (!(a > 0.0)) throw DomainError("hurwitz_zeta_int: a must be > 0");
    const int n_base = detail::em_base_terms;
    const double sd = s;
    const double big = a + n_base;
    // Corrections first; they are the smallest contributions.
    double correction = 0.0;
    double rising = sd;                       // s (s+1) ... (s+2j-2)
    double power = std::pow(big, -sd - 1.0);  // big^(-s-2j+1)
    double fact = 2.0;                        // (2j)!
    for (int j = 1; j <= detail::em_bernoulli_terms; ++j) {
        correction += detail::bernoulli_even[static_cast<std::size_t>(j - 1)] / fact * rising * power;
        rising *= (sd + 2 * j - 1) * (sd + 2 * j);
        power /= big * big;
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    }
    double sum = correction + std::pow(big, 1.0 - sd) / (sd - 1.0) + 0.5 * std::pow(big, -sd);
    for (int n = n_base - 1; n >= 0; --n) sum += std::pow(n + a, -sd);
    return sum;
}

namespace detail {

inline constexpr int zeta_cache_max = 256;

struct ZetaTables {
    std::array<double, zeta_cache_max + 1> zeta{};
    std::array<double, zeta_cache_max + 1> zeta_minus_one{};

    ZetaTables() {
        for (int s = 2; s <= zeta_cache_max; ++s) {
            zeta_minus_one[static_cast<std::size_t>(s)] = hurwitz_zeta_int(s, 2.0);
            zeta[static_cast<std::size_t>(s)] = 1.0 + zeta_minus_one[static_cast<std::size_t>(s)];
        }
    }
};

// Function-local static: initialised once, thread-safe, read-only afterwards.
inline const ZetaTables& zeta_tables() {
    static const ZetaTables tables;
    return tables;
}

}  // namespace detail

/// Riemann zeta at an integer s >= 2.
inline double zeta_int(int s) {
    if (s < 2) throw DomainError("zeta_int: s must be >= 2, got " + std::to_string(s));
    if (s > detail::zeta_cache_max) return 1.0 + std::exp2(-s) + std::pow(3.0, -s);
    return detail::zeta_tables().zeta[static_cast<std::size_t>(s)];
}

/// zeta(s) - 1 without cancellation.
inline double zeta_int_minus_one(int s) {
    if (s < 2) throw DomainError("zeta_int_minus_one: s must be >= 2");
    if (s > detail::zeta_cache_max) return std::exp2(-s) + std::pow(3.0, -s);
    return detail::zeta_tables().zeta_minus_one[static_cast<std::size_t>(s)];
}

/// sin(pi x) with exact argument reduction; exactly 0 at integers.
inline double sin_pi(double x) {
    double r = std::remainder(x, 2.0);  // [-1, 1]
    if (r > 0.5) r = 1.0 - r;
    if (r < -0.5) r = -1.0 - r;
    return std::sin(constants::pi * r);
}

namespace detail {

// ln Gamma(1 + t) for |t| <= 1/2:
// -gamma t + (t - log1p t) + sum_{s>=2} (-1)^s (zeta(s) - 1) t^s / s.
inline double ln_gamma_1p_series(double t) {
    double sum = 0.0;
    double power = t * t;
    for (int s = 2; s <= 80; ++s) {
        const double term = zeta_int_minus_one(s) * power / s;
        sum += (s % 2 == 0) ? term : -term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum) + 1e-300) break;
        power *= t;
    }
    return -constants::euler_gamma * t + (t - std::log1p(t)) + sum;
}

inline double ln_gamma_stirling(double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double power = inv;
    for (int j = 1; j <= em_bernoulli_terms; ++j) {
        series += bernoulli_even[static_cast<std::size_t>(j - 1)] / (2.0 * j * (2.0 * j - 1.0)) * power;
        power *= inv2;
    }
    return (x - 0.5) * std::log(x) - x + constants::half_ln_2pi + series;
}

}  // namespace detail

/// ln Gamma(x) for x > 0. Taylor series around 1 and 2 (so the zeros at 1 and 2
/// keep full relative accuracy), downward recurrence below 10, Stirling above.
inline double ln_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("ln_gamma: x must be finite and > 0, got " + std::to_string(x));
    }
    if (x < 0.5) return detail::ln_gamma_1p_series(x) - std::log(x);
    if (x <= 1.5) return detail::ln_gamma_1p_series(x - 1.0);
    if (x <= 2.5) return std::log1p(x - 2.0) + detail::ln_gamma_1p_series(x - 2.0);
    if (x < 10.0) {
        double product = 1.0;
        while (x > 2.5) {
            x -= 1.0;
            product *= x;
        }
        return std::log(product) + std::log1p(x - 2.0) + detail::ln_gamma_1p_series(x - 2.0);
    }
    return detail::ln_gamma_stirling(x);
}

/// 1/Gamma(x) on the whole real line; exactly 0 at x = 0, -1, -2, ...
inline double rgamma(double x) {
    if (!std::isfinite(x)) throw DomainError("rgamma: x must be finite");
    if (x > 0.5) return std::exp(-ln_gamma(x));
    if (detail::is_nonpositive_integer(x)) return 0.0;
    // Reflection: 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi.
    const double s = sin_pi(x);
    const double log_mag = ln_gamma(1.0 - x) + std::log(std::fabs(s)) - std::log(constants::pi);
    return std::copysign(std::exp(log_mag), s);
}

/// Digamma for x > 0: upward recurrence to x >= 10, then the asymptotic series
/// through B_14.
inline double digamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("digamma: x must be finite and > 0, got " + std::to_string(x));
    }
    double shift = 0.0;
    while (x < 10.0) {
        shift += 1.0 / x;
        x += 1.0;
    }
    const double inv2 = 1.0 / (x * x);
    double series = 0.0;
    double power = inv2;
    for (int j = 1; j <= detail::em_bernoulli_terms; ++j) {
        series += detail::bernoulli_even[static_cast<std::size_t>(j - 1)] / (2.0 * j) * power;
        power *= inv2;
    }
    return std::log(x) - 0.5 / x - series - shift;
}

/// psi^(m)(x) for m >= 1, x > 0. Recurrence up to x >= 10 + 2m, asymptotic
/// series through B_14 from there.
inline double polygamma(int m, double x) {
    if (m < 1) throw DomainError("polygamma: order must be >= 1");
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("polygamma: x must be finite and > 0, got " + std::to_string(x));
    }
    const double threshold = 10.0 + 2.0 * m;
    double shift = 0.0;
    while (x < threshold) {
        shift += std::pow(x, -(m + 1.0));
        x += 1.0;
    }
    const double m_fact = detail::factorial(m);
    const double inv = 1.0 / x;
    double asym = detail::factorial(m - 1) * std::pow(inv, m) + 0.5 * m_fact * std::pow(inv, m + 1);
    // B_2j (2j+m-1)! / (2j)! / x^(2j+m)
    double ratio = detail::factorial(m + 1) / 2.0;  // (2j+m-1)!/(2j)! at j = 1
    double power = std::pow(inv, m + 2);
    for (int j = 1; j <= detail::em_bernoulli_terms; ++j) {
        asym += detail::bernoulli_even[static_cast<std::size_t>(j - 1)] * ratio * power;
        ratio *= (2.0 * j + m) * (2.0 * j + m + 1) / ((2.0 * j + 1) * (2.0 * j + 2));
        power *= inv * inv;
    }
    const double magnitude = m_fact * shift + asym;
    return (m % 2 == 1) ? magnitude : -magnitude;
}

enum class HypergeometricRoute { automatic, direct, pfaff };

namespace detail {

inline constexpr std::size_t series_term_cap = 1000000;

inline SeriesValue hypergeometric_direct(double a, double b, double c, double w, double tol) {
    double term = 1.0;
    double sum = 1.0;
    double magnitude = 1.0;
    const double settle = std::fabs(a) + std::fabs(b) + std::fabs(c) + 2.0;
    for (std::size_t n = 0; n < series_term_cap; ++n) {
        const double dn = static_cast<double>(n);
        term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * w;
        sum += term;
        magnitude += std::fabs(term);
        if (term == 0.0) {
            return {sum, 2.0 * std::numeric_limits<double>::epsilon() * magnitude, n + 2, true};
        }
        const double next = dn + 1.0;
        const double ratio = std::fabs((a + next) * (b + next) / ((c + next) * (next + 1.0)) * w);
        if (next > settle) {
            const double rho = std::max(ratio, std::fabs(w));
            if (rho < 1.0) {
                const double tail = std::fabs(term) * rho / (1.0 - rho);
                const double err = tail + 2.0 * std::numeric_limits<double>::epsilon() * magnitude;
                if (err <= tol) return {sum, err, n + 2, true};
            }
        }
    }
    return {sum, std::numeric_limits<double>::infinity(), series_term_cap, false};
}

}  // namespace detail

/// Gauss 2F1(a, b; c; z) for z in [-1, 0]. The direct series is used for
/// z in (-1/2, 0]; otherwise Pfaff's transformation
///   F(a,b;c;z) = (1-z)^(-b) F(c-a, b; c; z/(z-1))
/// moves the argument into [1/3, 1/2] first. tol is absolute.
inline SeriesValue gauss_2f1(double a, double b, double c, double z, double tol = 1e-13,
                             HypergeometricRoute route = HypergeometricRoute::automatic) {
    if (detail::is_nonpositive_integer(c)) {
        throw ParameterError("gauss_2f1: c must not be a nonpositive integer");
    }
    if (!(z >= -1.0 && z <= 0.0)) throw DomainError("gauss_2f1: z must lie in [-1, 0]");
    if (z == 0.0) return {1.0, 0.0, 1, true};
    const bool use_pfaff = route == HypergeometricRoute::pfaff ||
                           (route == HypergeometricRoute::automatic && z <= -0.5);
    SeriesValue result;
    if (use_pfaff) {
        const double scale = std::pow(1.0 - z, -b);
        result = detail::hypergeometric_direct(c - a, b, c, z / (z - 1.0), tol / scale);
        result.value *= scale;
        result.error_estimate *= scale;
    } else {
        result = detail::hypergeometric_direct(a, b, c, z, tol);
    }
    if (!result.converged) {
        throw ConvergenceError("gauss_2f1: term cap reached", result.value);
    }
    return result;
}

/// Phi(-1, 1, a) = sum_{n>=0} (-1)^n / (n + a) for a not in {0, -1, -2, ...}.
/// Negative-denominator terms are added explicitly; the positive tail is summed
/// in pairs.
inline SeriesValue lerch_alt(double a, double tol = 1e-12) {
    if (!std::isfinite(a)) throw DomainError("lerch_alt: a must be finite");
    if (a <= 0.0 && std::fabs(a - std::nearbyint(a)) < 1e-12) {
        throw PoleError("lerch_alt: pole at a = " + std::to_string(a));
    }
    double head = 0.0;
    double sign = 1.0;
    double start = a;
    std::size_t explicit_terms = 0;
    while (start < 0.0) {
        head += sign / start;
        sign = -sign;
        start += 1.0;
        ++explicit_terms;
    }
    auto tail = alt_series_sum([start](std::size_t n) {
        const double t = 1.0 / (static_cast<double>(n) + start);
        return (n % 2 == 0) ? t : -t;
    }, tol);
    tail.value = head + sign * tail.value;
    tail.terms_used += explicit_terms;
    return tail;
}

/// sum_{n>=0} [1/(n+a) - 1/(n+b)] = psi(b) - psi(a); the only way the divergent
/// Phi(1, 1, .) terms enter.
inline double lerch_one_diff(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("lerch_one_diff: a and b must be > 0");
    if (a == b) return 0.0;
    return digamma(b) - digamma(a);
}

}  // namespace ksf
