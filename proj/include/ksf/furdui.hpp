#pragma once

// Moments I(k, m) = int_0^k x^m psi_k(x) dx: a regularized quadrature oracle and
// the zeta-series, log-gamma and polygamma-recursion evaluators.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ksf/errors.hpp"
#include "ksf/k_core.hpp"
#include "ksf/nielsen_beta.hpp"
#include "ksf/oracles.hpp"
#include "ksf/scalar_core.hpp"
#include "ksf/types.hpp"

namespace ksf {

enum class FurduiMethod { oracle, thm31, thm32_printed, thm32_variant, thm33_printed, thm33_variant, thm34, eq310 };

inline const char* to_string(FurduiMethod m) {
    switch (m) {
        case FurduiMethod::oracle: return "oracle";
        case FurduiMethod::thm31: return "thm31";
        case FurduiMethod::thm32_printed: return "thm32_printed";
        case FurduiMethod::thm32_variant: return "thm32_variant";
        case FurduiMethod::thm33_printed: return "thm33_printed";
        case FurduiMethod::thm33_variant: return "thm33_variant";
        case FurduiMethod::thm34: return "thm34";
        case FurduiMethod::eq310: return "eq310";
    }
    return "?";
}

inline std::optional<FurduiMethod> parse_furdui_method(std::string_view name) {
    for (auto m : {FurduiMethod::oracle, FurduiMethod::thm31, FurduiMethod::thm32_printed,
                   FurduiMethod::thm32_variant, FurduiMethod::thm33_printed, FurduiMethod::thm33_variant,
                   FurduiMethod::thm34, FurduiMethod::eq310}) {
        if (name == to_string(m)) return m;
    }
    return std::nullopt;
}

struct FurduiMethodResult {
    FurduiMethod method = FurduiMethod::oracle;
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t terms_or_subdivisions = 0;
};

namespace detail {

inline void check_moment(int m, double tol, const char* who) {
    if (m < 1) throw DomainError(std::string(who) + ": m must be >= 1");
    if (!(tol > 0.0)) throw DomainError(std::string(who) + ": tol must be > 0");
}

// int_0^a u^j ln u du.
inline double log_moment(int j, double a) {
    const double p = j + 1.0;
    return std::pow(a, p) * (std::log(a) / p - 1.0 / (p * p));
}

// sum_{s>=s0} sign(s) (zeta(s) - 1) w(s), stopped once the terms fall below tol.
// zeta(s) - 1 shrinks at least by 1/2 per step, so the tail is bounded by the
// last term.
template <class Weight>
SeriesValue zeta_excess_sum(int s0, int step, Weight&& w, double tol) {
    double sum = 0.0;
    double last = std::numeric_limits<double>::infinity();
    std::size_t terms = 0;
    for (int s = s0; terms < 4000; s += step, ++terms) {
        const double t = zeta_int_minus_one(s) * w(s);
        sum += t;
        last = std::fabs(t);
        if (last < 0.1 * tol) return {sum, last, terms + 1, true};
    }
    throw ConvergenceError("zeta_excess_sum: term cap reached", sum);
}

}  // namespace detail

/// int_0^k x^m [psi_k(x) + 1/x] dx - k^m/m. The bracket equals
/// (ln k + psi(1 + x/k))/k, which is smooth down to x = 0.
inline QuadratureResult furdui_oracle(KScale k, int m, double tol) {
    detail::check_moment(m, tol, "furdui_oracle");
    const double kv = k.value();
    const double lk = std::log(kv);
    auto f = [&](double x) { return std::pow(x, m) * (lk + digamma(1.0 + x / kv)) / kv; };
    auto r = adaptive_quad(f, 0.0, kv, tol);
    r.value -= std::pow(kv, m) / m;
    return r;
}

/// Unregularized quadrature of x^m psi_k(x); only the test suite uses it.
inline QuadratureResult furdui_oracle_raw(KScale k, int m, double tol) {
    detail::check_moment(m, tol, "furdui_oracle_raw");
    return adaptive_quad([&](double x) { return std::pow(x, m) * psi_k(k, x); }, 0.0, k.value(), tol);
}

/// k^m [(ln k - gamma)/(m+1) - 1/m + sum_{s>=2} (-1)^s zeta(s)/(m+s)].
/// The unit part of zeta(s) sums to beta(m + 2); the rest decays like 2^-s.
inline SeriesValue thm31_series(KScale k, int m, double tol) {
    detail::check_moment(m, tol, "thm31_series");
    const double kv = k.value();
    const double km = std::pow(kv, m);
    const double unit = beta_k(KScale(1.0), m + 2.0);
    auto rest = detail::zeta_excess_sum(2, 1, [m](int s) { return (s % 2 == 0 ? 1.0 : -1.0) / (m + s); }, tol / km);
    const double value = km * ((std::log(kv) - constants::euler_gamma) / (m + 1.0) - 1.0 / m + unit + rest.value);
    return {value, km * rest.error_estimate, rest.terms_used, true};
}

enum class Thm32Variant { as_printed, sign_variant };

/// k^m (ln k -+ m gamma)/(m+1) - k^m/m + m k^m sum_{s>=2} (-1)^(s+1) zeta(s)/(s(m+s)).
/// as_printed takes the minus sign, sign_variant the plus sign. The unit part of
/// the sum is (ln 2 - 1 + beta(m + 2))/m.
inline SeriesValue thm32_series(KScale k, int m, double tol, Thm32Variant variant) {
    detail::check_moment(m, tol, "thm32_series");
    const double kv = k.value();
    const double km = std::pow(kv, m);
    const double unit = (constants::ln2 - 1.0 + beta_k(KScale(1.0), m + 2.0)) / m;
    auto rest = detail::zeta_excess_sum(
        2, 1, [m](int s) { return (s % 2 == 0 ? -1.0 : 1.0) / (static_cast<double>(s) * (m + s)); },
        tol / (m * km));
    const double sign = variant == Thm32Variant::as_printed ? -1.0 : 1.0;
    const double value = km * (std::log(kv) + sign * m * constants::euler_gamma) / (m + 1.0) - km / m +
                         m * km * (unit + rest.value);
    return {value, m * km * rest.error_estimate, rest.terms_used, true};
}

/// int_0^pi x^(m-1) ln sin x dx. Folding [pi/2, pi] onto [0, pi/2] gives the
/// weight p(u) = u^(m-1) + (pi - u)^(m-1); ln sin u = ln(sin u / u) + ln u, and
/// the ln u part is integrated exactly.
inline QuadratureResult logsin_moment(int m, double tol) {
    detail::check_moment(m, tol, "logsin_moment");
    const double pi = constants::pi;
    const double half = pi / 2.0;
    auto weight = [m, pi](double u) { return std::pow(u, m - 1) + std::pow(pi - u, m - 1); };
    auto r = adaptive_quad([&](double u) { return weight(u) * std::log(std::sin(u) / u); }, 0.0, half, tol);
    // int_0^(pi/2) p(u) ln u du, with (pi - u)^(m-1) expanded binomially.
    double exact = detail::log_moment(m - 1, half);
    double binom = 1.0;
    for (int j = 0; j <= m - 1; ++j) {
        const double sign = j % 2 == 0 ? 1.0 : -1.0;
        exact += sign * binom * std::pow(pi, m - 1 - j) * detail::log_moment(j, half);
        binom = binom * (m - 1 - j) / (j + 1.0);
    }
    r.value += exact;
    return r;
}

enum class Thm33Variant { as_printed, corrected, lnGamma_audit };

inline const char* to_string(Thm33Variant v) {
    switch (v) {
        case Thm33Variant::as_printed: return "as_printed";
        case Thm33Variant::corrected: return "corrected";
        case Thm33Variant::lnGamma_audit: return "lnGamma_audit";
    }
    return "?";
}

/// Odd-zeta form from the reflection expansion of ln Gamma_k:
///   -m k^m (ln k - gamma)/(m+1) + c m (k^m ln k/m - k^m/m^2) + s k^m ln(pi/k)/2
///   + m k^m/(2 pi^m) int_0^pi x^(m-1) ln sin x dx + m k^m sum zeta(2n+1)/((2n+1)(2n+m+1)).
/// as_printed has c = 3/2, s = +1; corrected has c = 1/2, s = -1. lnGamma_audit
/// integrates -m x^(m-1) ln Gamma_k(x) instead.
inline SeriesValue thm33_series(KScale k, int m, double tol, Thm33Variant variant) {
    detail::check_moment(m, tol, "thm33_series");
    const double kv = k.value();
    const double km = std::pow(kv, m);
    const double lk = std::log(kv);
    // int_0^k x^(m-1) ln x dx
    const double log_part = km * lk / m - km / (static_cast<double>(m) * m);
    if (variant == Thm33Variant::lnGamma_audit) {
        auto smooth = [&](double x) { return std::pow(x, m - 1) * (ln_gamma_k(k, x) + std::log(x)); };
        const auto q = adaptive_quad(smooth, 0.0, kv, tol / (2.0 * m));
        return {-m * (q.value - log_part), m * q.error_estimate, q.subdivisions, true};
    }
    const bool printed = variant == Thm33Variant::as_printed;
    const double c = printed ? 1.5 : 0.5;
    const double s = printed ? 1.0 : -1.0;
    const double scale = m * km;
    const auto ls = logsin_moment(m, tol / (scale / std::pow(constants::pi, m)));
    // sum_{n>=1} 1/((2n+1)(2n+m+1)) = (psi(3/2 + m/2) - psi(3/2)) / (2m)
    const double unit = (digamma(1.5 + 0.5 * m) - digamma(1.5)) / (2.0 * m);
    auto rest = detail::zeta_excess_sum(
        3, 2, [m](int q) { return 1.0 / (static_cast<double>(q) * (q + m)); }, tol / scale);
    const double value = -scale * (lk - constants::euler_gamma) / (m + 1.0) + c * m * log_part +
                         s * km * std::log(constants::pi / kv) / 2.0 +
                         scale / (2.0 * std::pow(constants::pi, m)) * ls.value + scale * (unit + rest.value);
    const double err = scale * (ls.error_estimate / (2.0 * std::pow(constants::pi, m)) + rest.error_estimate);
    return {value, err, rest.terms_used, true};
}

enum class Thm34Variant { as_printed, corrected };

namespace detail {

inline constexpr int thm34_direct_terms = 24;

// sum_{i>=1} F(n+1, m+n+1; m+n+2; -1/i) / i^(n+1). Terms i <= 24 use gauss_2f1;
// beyond that F is expanded in powers of -1/i and each power summed with the
// Hurwitz zeta function at N + 1.
inline SeriesValue thm34_hypergeometric_sum(int m, int n, double tol) {
    const double a = n + 1.0;
    const double b = m + n + 1.0;
    const double c = m + n + 2.0;
    const int big_n = thm34_direct_terms;
    double direct = 0.0;
    double err = 0.0;
    for (int i = big_n; i >= 1; --i) {
        const auto f = gauss_2f1(a, b, c, -1.0 / i, 0.1 * tol);
        const double w = std::pow(static_cast<double>(i), -a);
        direct += w * f.value;
        err += w * f.error_estimate;
    }
    double tail = 0.0;
    double coeff = 1.0;  // (a)_j (b)_j / ((c)_j j!)
    std::size_t terms = static_cast<std::size_t>(big_n);
    for (int j = 0; j < 200; ++j, ++terms) {
        const double t = (j % 2 == 0 ? 1.0 : -1.0) * coeff * hurwitz_zeta_int(n + 1 + j, big_n + 1.0);
        tail += t;
        if (std::fabs(t) < 1e-3 * tol && j > 2) {
            return {direct + tail, err + std::fabs(t), terms + 1, true};
        }
        coeff *= (a + j) * (b + j) / ((c + j) * (j + 1.0));
    }
    throw ConvergenceError("thm34_hypergeometric_sum: expansion did not settle", direct + tail);
}

}  // namespace detail

/// Integration-by-parts recursion of depth n:
///   sum_{j<n} (-1)^j k^(m+j+1) psi_k^(j)(k) / ((m+1)...(m+j+1))
///   + middle - n! k^m / ((m+1)...(m+n+1)) sum_i F(n+1, m+n+1; m+n+2; -1/i) / i^(n+1)
/// with middle = -n! k^m / (m (m+1)...(m+n)) (corrected) or (-1)^(n+1) k^m n!/m
/// (as_printed). n = 1 is the short form.
inline SeriesValue thm34_recursion(KScale k, int m, int n, double tol,
                                   Thm34Variant variant = Thm34Variant::corrected) {
    detail::check_moment(m, tol, "thm34_recursion");
    if (n < 1 || n > 8) throw ParameterError("thm34_recursion: n must lie in [1, 8]");
    const double kv = k.value();
    const double km = std::pow(kv, m);
    double prefix = 0.0;
    double rising = 1.0;  // (m+1)...(m+j+1)
    double power = km;    // k^(m+j+1)
    for (int j = 0; j < n; ++j) {
        rising *= m + j + 1.0;
        power *= kv;
        const double d = j == 0 ? psi_k(k, kv) : psi_k_m(k, j, kv);
        prefix += (j % 2 == 0 ? 1.0 : -1.0) * power * d / rising;
    }
    const double n_fact = detail::factorial(n);
    const double middle = variant == Thm34Variant::corrected
                              ? -n_fact * km / (m * rising)
                              : (n % 2 == 1 ? 1.0 : -1.0) * km * n_fact / m;
    const double outer = n_fact * km / (rising * (m + n + 1.0));
    const auto sum = detail::thm34_hypergeometric_sum(m, n, tol / outer);
    return {prefix + middle - outer * sum.value, outer * sum.error_estimate, sum.terms_used, true};
}

/// Depth-one case of thm34_recursion.
inline SeriesValue eq310_series(KScale k, int m, double tol, Thm34Variant variant = Thm34Variant::corrected) {
    return thm34_recursion(k, m, 1, tol, variant);
}

/// Runs one method; n only matters for thm34.
inline FurduiMethodResult furdui_method(FurduiMethod method, KScale k, int m, int n, double tol) {
    auto from_series = [method](const SeriesValue& s) {
        return FurduiMethodResult{method, s.value, s.error_estimate, s.terms_used};
    };
    switch (method) {
        case FurduiMethod::oracle: {
            const auto q = furdui_oracle(k, m, tol);
            return {method, q.value, q.error_estimate, q.subdivisions};
        }
        case FurduiMethod::thm31: return from_series(thm31_series(k, m, tol));
        case FurduiMethod::thm32_printed: return from_series(thm32_series(k, m, tol, Thm32Variant::as_printed));
        case FurduiMethod::thm32_variant: return from_series(thm32_series(k, m, tol, Thm32Variant::sign_variant));
        case FurduiMethod::thm33_printed: return from_series(thm33_series(k, m, tol, Thm33Variant::as_printed));
        case FurduiMethod::thm33_variant: return from_series(thm33_series(k, m, tol, Thm33Variant::lnGamma_audit));
        case FurduiMethod::thm34: return from_series(thm34_recursion(k, m, n, tol));
        case FurduiMethod::eq310: return from_series(eq310_series(k, m, tol));
    }
    throw ParameterError("furdui_method: unknown method");
}

}  // namespace ksf
