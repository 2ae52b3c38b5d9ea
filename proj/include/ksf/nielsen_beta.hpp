#pragma once

// Nielsen k-beta function
//   beta_k(x) = int_0^1 t^(x-1)/(1+t^k) dt = sum (-1)^n/(x+nk)
//             = (psi_k((x+k)/2) - psi_k(x/2)) / 2
// with its derivatives, the two zeta-based expansions, the doubling telescope and
// the inequality material built on it.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ksf/errors.hpp"
#include "ksf/k_core.hpp"
#include "ksf/oracles.hpp"
#include "ksf/scalar_core.hpp"
#include "ksf/types.hpp"

namespace ksf {

/// beta_k(x) for x > 0 from the digamma difference. The ln k terms cancel, so
/// this is (psi((x+k)/(2k)) - psi(x/(2k))) / (2k).
inline double beta_k(KScale k, double x) {
    detail::check_positive(x, "beta_k");
    const double kv = k.value();
    return (digamma((x + kv) / (2.0 * kv)) - digamma(x / (2.0 * kv))) / (2.0 * kv);
}

/// j-th derivative: 2^-(j+1) (psi_k^(j)((x+k)/2) - psi_k^(j)(x/2)).
inline double beta_k_derivative(KScale k, int j, double x) {
    if (j < 0) throw ParameterError("beta_k_derivative: order must be >= 0");
    if (j == 0) return beta_k(k, x);
    detail::check_positive(x, "beta_k_derivative");
    const double kv = k.value();
    return std::ldexp(psi_k_m(k, j, (x + kv) / 2.0) - psi_k_m(k, j, x / 2.0), -(j + 1));
}

/// beta_k' (order 1) or beta_k'' (order 2).
inline double beta_k_deriv(KScale k, int order, double x) {
    if (order != 1 && order != 2) throw ParameterError("beta_k_deriv: order must be 1 or 2");
    return beta_k_derivative(k, order, x);
}

/// sum_{n>=0} (-1)^n / (x + nk), summed in pairs.
inline SeriesValue beta_k_series(KScale k, double x, double tol, std::size_t cap = 1000000) {
    detail::check_positive(x, "beta_k_series");
    const double kv = k.value();
    auto result = alt_series_sum([x, kv](std::size_t n) {
        const double t = 1.0 / (x + static_cast<double>(n) * kv);
        return (n % 2 == 0) ? t : -t;
    }, tol, cap);
    if (!result.converged) throw ConvergenceError("beta_k_series: term cap reached", result.value);
    return result;
}

/// int_0^1 t^(x-1) / (1 + t^k) dt. For x < 1 the substitution t = s^(1/x) turns it
/// into (1/x) int_0^1 ds / (1 + s^(k/x)).
inline QuadratureResult beta_k_integral(KScale k, double x, double tol) {
    detail::check_positive(x, "beta_k_integral");
    const double kv = k.value();
    if (x < 1.0) {
        const double p = kv / x;
        auto r = adaptive_quad([p](double s) { return 1.0 / (1.0 + std::pow(s, p)); }, 0.0, 1.0, tol * x);
        r.value /= x;
        r.error_estimate /= x;
        return r;
    }
    return adaptive_quad([x, kv](double t) { return std::pow(t, x - 1.0) / (1.0 + std::pow(t, kv)); },
                         0.0, 1.0, tol);
}

/// int_0^inf e^(-xt) / cosh(kt) dt, which equals beta_k((x+k)/2), for x > -k.
/// The integrand is written as 2 e^(-(x+k)t) / (1 + e^(-2kt)); the range is cut at
/// T with 2 e^(-(x+k)T)/(x+k) <= tol/10 and the cut tail added to the error.
inline QuadratureResult beta_k_cosh_form(KScale k, double x, double tol) {
    const double kv = k.value();
    if (!std::isfinite(x) || !(x > -kv)) throw DomainError("beta_k_cosh_form: need x > -k");
    if (!(tol > 0.0)) throw DomainError("beta_k_cosh_form: tol must be > 0");
    const double rate = x + kv;
    const double cut = std::max(std::log(10.0 / tol), std::log(20.0 / (tol * rate))) / rate;
    auto r = adaptive_quad([rate, kv](double t) {
        return 2.0 * std::exp(-rate * t) / (1.0 + std::exp(-2.0 * kv * t));
    }, 0.0, cut, tol / 2.0);
    r.error_estimate += 2.0 * std::exp(-rate * cut) / rate;
    return r;
}

/// Truncated power series about a center, as produced by the expansions below.
struct BetaExpansionTerms {
    double center = 0.0;
    std::vector<double> coefficients;
    double radius = 0.0;
    int truncation_order = 0;
};

/// Coefficients of beta_k(x + k) = ln2/k + sum_m (-1)^m (1 - 2^-m) zeta(m+1) x^m / k^(m+1).
inline BetaExpansionTerms beta_taylor_54_terms(KScale k, int order) {
    if (order < 0) throw ParameterError("beta_taylor_54: order must be >= 0");
    const double kv = k.value();
    BetaExpansionTerms terms;
    terms.center = kv;
    terms.radius = kv;
    terms.truncation_order = order;
    terms.coefficients.reserve(static_cast<std::size_t>(order) + 1);
    terms.coefficients.push_back(constants::ln2 / kv);
    double inv_k_power = 1.0 / kv;
    for (int m = 1; m <= order; ++m) {
        inv_k_power /= kv;
        const double eta = -std::expm1(-m * constants::ln2) * zeta_int(m + 1);
        terms.coefficients.push_back((m % 2 == 0 ? 1.0 : -1.0) * eta * inv_k_power);
    }
    return terms;
}

/// Partial sum of the Taylor series of beta_k(x + k) for |x| < k. For
/// 0 < x/k <= 0.9125 the terms alternate and decrease, so the bound is the first
/// omitted term; otherwise (1 - 2^-m) zeta(m+1) < 1 gives the geometric bound
/// (|x|/k)^(order+1) / (k (1 - |x|/k)).
inline SeriesValue beta_taylor_54(KScale k, double x, int order, double tol = 1e-10) {
    const double kv = k.value();
    if (!(std::fabs(x) < kv)) throw DomainError("beta_taylor_54: need |x| < k");
    const auto terms = beta_taylor_54_terms(k, order);
    double sum = 0.0;
    for (int m = order; m >= 1; --m) {
        sum += terms.coefficients[static_cast<std::size_t>(m)] * std::pow(x, m);
    }
    sum += terms.coefficients[0];
    const double ratio = std::fabs(x) / kv;
    double bound;
    if (x == 0.0) {
        bound = 0.0;
    } else if (x > 0.0 && ratio <= 0.9125) {
        const double next = -std::expm1(-(order + 1) * constants::ln2) * zeta_int(order + 2);
        bound = next * std::pow(ratio, order + 1) / kv;
    } else {
        bound = std::pow(ratio, order + 1) / (kv * (1.0 - ratio));
    }
    return {sum, bound, static_cast<std::size_t>(order) + 1, bound <= tol};
}

/// beta_k(x) = 1/x - 1/(x+k) + sum_{n>=1} (-1)^(n+1) zeta(n+1) (a^n - b^n) / (2 k^(n+1)),
/// a = (x+k)/2, b = x/2, for 0 < x < k. With zeta(n+1) = 1 + (zeta(n+1) - 1) the
/// "1" part sums to (a/(k+a) - b/(k+b)) / (2k); the remainder is bounded by
/// zeta(s) - 1 <= 3 2^-s, giving the tail (3/(4k)) r^(N+1) / (1 - r), r = a/(2k).
inline SeriesValue beta_expansion_55(KScale k, double x, int n_max, double tol = 1e-12) {
    const double kv = k.value();
    if (!(x > 0.0 && x < kv)) throw DomainError("beta_expansion_55: need 0 < x < k");
    if (n_max < 1) throw ParameterError("beta_expansion_55: n_max must be >= 1");
    const double a = (x + kv) / 2.0;
    const double b = x / 2.0;
    const double r = a / (2.0 * kv);
    double remainder = 0.0;
    int used = 0;
    double bound = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        const double weight = zeta_int_minus_one(n + 1) / (2.0 * kv);
        const double diff = std::pow(a / kv, n) - std::pow(b / kv, n);
        remainder += (n % 2 == 1 ? weight : -weight) * diff;
        used = n;
        bound = 0.75 / kv * std::pow(r, n + 1) / (1.0 - r);
        if (bound <= tol) break;
    }
    const double ones = (a / (kv + a) - b / (kv + b)) / (2.0 * kv);
    const double value = 1.0 / x - 1.0 / (x + kv) + ones + remainder;
    if (bound > tol) throw ConvergenceError("beta_expansion_55: tail bound not met by n_max", value);
    return {value, bound, static_cast<std::size_t>(used), true};
}

/// One sample of the raw (unsplit) expansion's partial sums.
struct Expansion55Sample {
    double x = 0.0;
    double partial_sum = 0.0;
    double last_term = 0.0;  // largest |term| among the last 10 summed
    bool converges = false;  // last terms below 1e-10 and still shrinking
};

/// Raw partial sums of the zeta expansion at each x in xs (x = 0 and x = -k are
/// skipped), used to map where the printed series actually converges.
inline std::vector<Expansion55Sample> map_expansion_55_region(KScale k, const std::vector<double>& xs, int n) {
    if (n < 20) throw ParameterError("map_expansion_55_region: n must be >= 20");
    const double kv = k.value();
    std::vector<Expansion55Sample> out;
    for (double x : xs) {
        if (x == 0.0 || x == -kv) continue;
        const double a = (x + kv) / (2.0 * kv);
        const double b = x / (2.0 * kv);
        double sum = 1.0 / x - 1.0 / (x + kv);
        double tail_max = 0.0;
        double early_max = 0.0;
        for (int i = 1; i <= n; ++i) {
            const double term = (i % 2 == 1 ? 1.0 : -1.0) * zeta_int(i + 1) / (2.0 * kv) *
                                (std::pow(a, i) - std::pow(b, i));
            sum += term;
            if (i > n - 10) tail_max = std::max(tail_max, std::fabs(term));
            if (i > n - 20 && i <= n - 10) early_max = std::max(early_max, std::fabs(term));
        }
        const bool finite = std::isfinite(sum);
        out.push_back({x, sum, tail_max, finite && tail_max < 1e-10 && tail_max <= early_max});
    }
    return out;
}

enum class TelescopeVariant { as_printed, corrected };

inline const char* to_string(TelescopeVariant v) {
    return v == TelescopeVariant::as_printed ? "as_printed" : "corrected";
}

/// Doubling telescope sum_{m=1}^n beta_k(c_m x) against
/// psi_k(d_n x) - psi_k(kx) - n ln2 / k. as_printed: c_m = (2k)^m, d_n = 2^n k^n;
/// corrected: c_m = 2^m k, d_n = 2^n k. Returns (lhs, rhs).
inline std::pair<double, double> telescope_51(KScale k, double x, int n, TelescopeVariant variant) {
    detail::check_positive(x, "telescope_51");
    if (n < 1 || n > 20) throw ParameterError("telescope_51: n must lie in [1, 20]");
    const double kv = k.value();
    const double base = variant == TelescopeVariant::as_printed ? 2.0 * kv : 2.0;
    const double scale = variant == TelescopeVariant::as_printed ? 1.0 : kv;
    double lhs = 0.0;
    double factor = scale;
    for (int m = 1; m <= n; ++m) {
        factor *= base;
        const double arg = factor * x;
        if (!std::isfinite(arg) || arg == 0.0) throw RangeError("telescope_51: argument out of range");
        lhs += beta_k(k, arg);
    }
    const double top = factor * x;
    const double rhs = psi_k(k, top) - psi_k(k, kv * x) - n * constants::ln2 / kv;
    return {lhs, rhs};
}

/// The elementary bounds valid on (0, k):
/// 1/x - ln2/k < beta_k(x) < 1/x and beta_k(x) < 1/x - ln2/k + pi^2 x / (12 k^2).
struct RemarkBounds {
    double lower = 0.0;
    double upper = 0.0;
    double refined_upper = 0.0;
};

inline RemarkBounds remark_bounds(KScale k, double x) {
    detail::check_positive(x, "remark_bounds");
    const double kv = k.value();
    const double lower = 1.0 / x - constants::ln2 / kv;
    return {lower, 1.0 / x, lower + constants::pi * constants::pi * x / (12.0 * kv * kv)};
}

/// 2 beta'^2 - beta'' beta, positive for every x > 0.
inline double lemma26_margin(KScale k, double x) {
    const double b1 = beta_k_deriv(k, 1, x);
    return 2.0 * b1 * b1 - beta_k_deriv(k, 2, x) * beta_k(k, x);
}

/// lambda(x) = x beta'(x) / beta(x)^2, decreasing on (0, inf).
inline double lambda_27(KScale k, double x) {
    const double b = beta_k(k, x);
    return x * beta_k_deriv(k, 1, x) / (b * b);
}

/// Harmonic mean of beta_k(x) and beta_k(k^2/x); at most ln2/k with equality at x = k.
inline double harmonic_mean_56(KScale k, double x) {
    detail::check_positive(x, "harmonic_mean_56");
    const double kv = k.value();
    const double p = beta_k(k, x);
    const double q = beta_k(k, kv * kv / x);
    return 2.0 * p * q / (p + q);
}

/// f(x) = x beta_k(x), the completely monotone function of the open problem.
inline double x_beta_k(KScale k, double x) { return x * beta_k(k, x); }

/// f^(j)(x) = x beta^(j)(x) + j beta^(j-1)(x).
inline double x_beta_k_derivative(KScale k, int j, double x) {
    if (j < 0) throw ParameterError("x_beta_k_derivative: order must be >= 0");
    if (j == 0) return x_beta_k(k, x);
    return x * beta_k_derivative(k, j, x) + j * beta_k_derivative(k, j - 1, x);
}

}  // namespace ksf
