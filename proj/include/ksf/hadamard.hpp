#pragma once

// Hadamard k-gamma function
//   H_k(x) = (psi_k(k - x/2) - psi_k((k - x)/2)) / (2 Gamma_k(k - x)) = beta_k(k - x) / Gamma_k(k - x)
// on the whole real line, with its functional equation, the Luschny-type
// representation, the superadditivity threshold and the Lerch identity.

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "ksf/errors.hpp"
#include "ksf/k_core.hpp"
#include "ksf/nielsen_beta.hpp"
#include "ksf/scalar_core.hpp"
#include "ksf/types.hpp"

namespace ksf {

namespace detail {

// H_k at x <= k, i.e. y = k - x >= 0. For y < k the identity
// beta_k(y) = 1/y - beta_k(y + k) removes the 0 * inf at y = 0.
inline double hadamard_base(KScale k, double x) {
    const double kv = k.value();
    const double y = kv - x;
    if (y < kv) return rgamma_k(k, y + kv) - beta_k(k, y + kv) * rgamma_k(k, y);
    return beta_k(k, y) * rgamma_k(k, y);
}

}  // namespace detail

/// H_k(x) for every finite x. Below the seam x = k the beta-difference form is
/// used directly; above it, H_k(z + k) = z H_k(z) + 1/Gamma_k(k - z) is applied
/// forward from the base point x - j k in (0, k].
inline double hadamard_k(KScale k, double x) {
    if (!std::isfinite(x)) throw DomainError("hadamard_k: x must be finite");
    const double kv = k.value();
    if (x <= kv) return detail::hadamard_base(k, x);
    const double steps = std::ceil((x - kv) / kv);
    double z = x - steps * kv;
    if (z <= 0.0) z += kv;
    double h = detail::hadamard_base(k, z);
    while (z + 0.5 * kv < x) {
        h = z * h + rgamma_k(k, kv - z);
        z += kv;
    }
    return h;
}

/// Luschny-type form H_k(x) = Gamma_k(x) (1 - k sin(pi x / k) beta_k(x) / pi), x > 0.
/// Independent of the recurrence; used as the reference for it.
inline double hadamard_k_luschny(KScale k, double x) {
    detail::check_positive(x, "hadamard_k_luschny");
    const double kv = k.value();
    const double s = sin_pi(x / kv);
    const double g = gamma_k(k, x);
    if (s == 0.0) return g;
    return g * (1.0 - kv * s * beta_k(k, x) / constants::pi);
}

/// (H_k(x + k), x H_k(x) + 1/Gamma_k(k - x)). The left side comes from the
/// Luschny-type form when x + k > 0 and from the beta-difference form otherwise,
/// never from the recurrence.
inline std::pair<double, double> functional_eq_41(KScale k, double x) {
    if (!std::isfinite(x)) throw DomainError("functional_eq_41: x must be finite");
    const double kv = k.value();
    const double z = x + kv;
    const double lhs = z > 0.0 ? hadamard_k_luschny(k, z) : detail::hadamard_base(k, z);
    const double rhs = x * hadamard_k(k, x) + rgamma_k(k, kv - x);
    return {lhs, rhs};
}

/// H_k(x + nk) by n steps of the functional equation, starting from H_k(x).
inline double recursion_47(KScale k, double x, int n) {
    if (!std::isfinite(x)) throw DomainError("recursion_47: x must be finite");
    if (n < 1 || n > 50) throw ParameterError("recursion_47: n must lie in [1, 50]");
    const double kv = k.value();
    double h = hadamard_k(k, x);
    for (int j = 0; j < n; ++j) {
        const double z = x + j * kv;
        h = z * h + rgamma_k(k, kv - z);
    }
    if (!std::isfinite(h)) throw RangeError("recursion_47: overflow");
    return h;
}

enum class ClosedFormVariant { as_printed, corrected };

inline const char* to_string(ClosedFormVariant v) {
    return v == ClosedFormVariant::as_printed ? "as_printed" : "corrected";
}

/// Unrolled n-step expansion
///   H_k(x + nk) = P_0 H_k(x) + sum_{i=0}^{n-1} P_{i+1} / Gamma_k(k - x - ik),
///   P_i = prod_{j=i}^{n-1} (x + jk).
/// as_printed reads the printed product literally: its j = 1 factor is (x + 1),
/// and the i = 0 reciprocal-gamma term carries the full product P_0.
inline double recursion_47_closed_form(KScale k, double x, int n, ClosedFormVariant variant) {
    if (!std::isfinite(x)) throw DomainError("recursion_47_closed_form: x must be finite");
    if (n < 1 || n > 50) throw ParameterError("recursion_47_closed_form: n must lie in [1, 50]");
    const double kv = k.value();
    const bool printed = variant == ClosedFormVariant::as_printed;
    auto factor = [&](int j) { return (printed && j == 1) ? x + 1.0 : x + j * kv; };
    double sum = 0.0;
    double tail_product = 1.0;  // P_{i+1}
    for (int i = n - 1; i >= 0; --i) {
        const double numerator = (printed && i == 0 && n > 1) ? tail_product * factor(0) : tail_product;
        sum += numerator * rgamma_k(k, kv - x - i * kv);
        tail_product *= factor(i);
    }
    return tail_product * hadamard_k(k, x) + sum;
}

/// (H_k(x), Gamma_k(x)/k - Gamma_k(x) sin(pi x/k) beta_k(x) / pi) with the right
/// side exactly as printed.
inline std::pair<double, double> representation_48(KScale k, double x) {
    detail::check_positive(x, "representation_48");
    const double kv = k.value();
    const double g = gamma_k(k, x);
    const double rhs = g / kv - g * sin_pi(x / kv) * beta_k(k, x) / constants::pi;
    return {hadamard_k(k, x), rhs};
}

struct RootResult {
    double root = 0.0;
    double residual = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int iterations = 0;
    int sign_changes = 0;  // sign changes of g seen on [1.5k, bracket_hi] at step 0.01k
};

/// g(t) = H_k(2t) - 2 k^(t/k) H_k(t), whose zero on [1.5k, inf) is the
/// superadditivity threshold alpha_0.
inline double alpha0_residual(KScale k, double t) {
    const double kv = k.value();
    return hadamard_k(k, 2.0 * t) - 2.0 * std::pow(kv, t / kv) * hadamard_k(k, t);
}

/// Bisection on [1.5k, 5k] (upper end doubled up to 100k until g changes sign)
/// down to a width of 1e-6 k, then secant steps guarded by the bracket until
/// |g| < tol.
inline RootResult alpha0_solve(KScale k, double tol) {
    if (!(tol > 0.0)) throw DomainError("alpha0_solve: tol must be > 0");
    const double kv = k.value();
    auto g = [&](double t) { return alpha0_residual(k, t); };
    double lo = 1.5 * kv;
    double hi = 5.0 * kv;
    double g_lo = g(lo);
    double g_hi = g(hi);
    while (std::signbit(g_lo) == std::signbit(g_hi)) {
        hi *= 2.0;
        if (hi > 100.0 * kv) throw ConvergenceError("alpha0_solve: no sign change below 100k");
        g_hi = g(hi);
    }
    RootResult result;
    result.bracket_hi = hi;

    // Uniqueness check at resolution 0.01k.
    const auto samples = static_cast<int>(std::ceil((hi - lo) / (0.01 * kv)));
    double prev = g_lo;
    for (int i = 1; i <= samples; ++i) {
        const double cur = g(std::min(hi, lo + i * 0.01 * kv));
        if (std::signbit(cur) != std::signbit(prev)) ++result.sign_changes;
        prev = cur;
    }

    int iterations = 0;
    while (hi - lo > 1e-6 * kv && iterations < 200) {
        const double mid = 0.5 * (lo + hi);
        const double g_mid = g(mid);
        if (std::signbit(g_mid) == std::signbit(g_lo)) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
            g_hi = g_mid;
        }
        ++iterations;
    }
    double t = std::fabs(g_lo) < std::fabs(g_hi) ? lo : hi;
    double g_t = std::fabs(g_lo) < std::fabs(g_hi) ? g_lo : g_hi;
    while (std::fabs(g_t) >= tol && iterations < 400) {
        double next = hi - g_hi * (hi - lo) / (g_hi - g_lo);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double g_next = g(next);
        if (std::signbit(g_next) == std::signbit(g_lo)) {
            lo = next;
            g_lo = g_next;
        } else {
            hi = next;
            g_hi = g_next;
        }
        t = next;
        g_t = g_next;
        ++iterations;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
    }
    if (std::fabs(g_t) >= tol) {
        throw ConvergenceError("alpha0_solve: residual " + std::to_string(g_t) + " above tol", t);
    }
    result.root = t;
    result.residual = g_t;
    result.bracket_lo = lo;
    result.bracket_hi = hi;
    result.iterations = iterations;
    return result;
}

/// k^(y/k) H_k(x) + k^(x/k) H_k(y) <= H_k(x + y); PASS iff lhs <= rhs + 1e-12.
inline IdentityReport superadditivity_check_43(KScale k, double x, double y) {
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError("superadditivity_check_43: need x, y > 0");
    const double kv = k.value();
    IdentityReport r;
    r.identity_id = "THM4.3";
    r.params = {{"k", kv}, {"x", x}, {"y", y}};
    r.lhs = std::pow(kv, y / kv) * hadamard_k(k, x) + std::pow(kv, x / kv) * hadamard_k(k, y);
    r.rhs = hadamard_k(k, x + y);
    r.abs_diff = std::fabs(r.lhs - r.rhs);
    r.rel_diff = relative_difference(r.lhs, r.rhs);
    r.verdict = r.lhs <= r.rhs + 1e-12 ? Verdict::pass : Verdict::fail;
    r.note = "inequality lhs <= rhs";
    return r;
}

enum class LerchVariant { as_printed, corrected };

inline const char* to_string(LerchVariant v) {
    return v == LerchVariant::as_printed ? "as_printed" : "corrected";
}

/// as_printed: (2x Phi(-1,1,-x), Phi(1,1,1-x/2) - Phi(1,1,1/2-x/2));
/// corrected:  (2 Phi(-1,1,1-x), Phi(1,1,1/2-x/2) - Phi(1,1,1-x/2)).
inline std::pair<double, double> lerch_identity_410(double x, LerchVariant variant, double tol = 1e-12) {
    if (!(std::fabs(x) < 1.0)) throw DomainError("lerch_identity_410: need |x| < 1");
    const double a = 1.0 - x / 2.0;
    const double b = 0.5 - x / 2.0;
    if (variant == LerchVariant::as_printed) {
        return {2.0 * x * lerch_alt(-x, tol).value, lerch_one_diff(a, b)};
    }
    return {2.0 * lerch_alt(1.0 - x, tol).value, lerch_one_diff(b, a)};
}

}  // namespace ksf
