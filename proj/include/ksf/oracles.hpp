#pragma once

// Independent numerical machinery the special-function modules are checked
// against: adaptive Gauss-Kronrod quadrature, paired alternating-series
// summation, central differences, a sampled complete-monotonicity probe and
// constant-discrepancy fitting.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ksf/errors.hpp"
#include "ksf/types.hpp"

namespace ksf {

namespace detail {

// 15-point Kronrod nodes (non-negative half) with the embedded 7-point Gauss rule.
inline constexpr std::array<double, 8> gk15_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> gk15_kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for nodes 1, 3, 5, 7 above.
inline constexpr std::array<double, 4> gk15_gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct QuadInterval {
    double a;
    double b;
    double value;
    double error;
    int depth;

    bool operator<(const QuadInterval& other) const { return error < other.error; }
};

template <class F>
QuadInterval gk15(F& f, double a, double b, int depth) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<double, 15> fv{};
    fv[14] = f(center);
    double kronrod = fv[14] * gk15_kronrod_weights[7];
    double gauss = fv[14] * gk15_gauss_weights[3];
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * gk15_nodes[i];
        fv[2 * i] = f(center - dx);
        fv[2 * i + 1] = f(center + dx);
        const double sum = fv[2 * i] + fv[2 * i + 1];
        kronrod += gk15_kronrod_weights[i] * sum;
        if (i % 2 == 1) gauss += gk15_gauss_weights[i / 2] * sum;
    }
    // QUADPACK scaling of |K15 - G7| against the mean deviation of f.
    const double mean = 0.5 * kronrod;
    double asc = gk15_kronrod_weights[7] * std::fabs(fv[14] - mean);
    for (std::size_t i = 0; i < 7; ++i) {
        asc += gk15_kronrod_weights[i] * (std::fabs(fv[2 * i] - mean) + std::fabs(fv[2 * i + 1] - mean));
    }
    asc *= std::fabs(half);
    double err = std::fabs((kronrod - gauss) * half);
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    return {a, b, kronrod * half, err, depth};
}

}  // namespace detail

inline constexpr int quad_depth_cap = 50;
inline constexpr std::size_t quad_interval_cap = 20000;

/// Globally adaptive GK15 on [a, b]. The per-interval error is the QUADPACK
/// estimate built from |K15 - G7|; the interval with the largest error is bisected
/// until the total is below max(tol, 4 eps |I|). Nodes are interior, so integrable
/// endpoint singularities are allowed. Intervals stop splitting at depth 50; if the
/// target is still missed the integrator throws ConvergenceError carrying its best
/// estimate.
template <class F>
QuadratureResult adaptive_quad(F&& f, double a, double b, double tol) {
    if (!(a < b)) throw DomainError("adaptive_quad: need a < b");
    if (!(tol > 0.0)) throw DomainError("adaptive_quad: tol must be > 0");

    std::priority_queue<detail::QuadInterval> active;
    double total_value = 0.0;
    double total_error = 0.0;
    double frozen_value = 0.0;
    double frozen_error = 0.0;
    std::size_t subdivisions = 0;

    const auto first = detail::gk15(f, a, b, 0);
    active.push(first);
    total_value = first.value;
    total_error = first.error;

    auto target = [&] {
        return std::max(tol, 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(total_value));
    };

    while (total_error > target() && !active.empty()) {
        const auto worst = active.top();
        active.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.depth >= quad_depth_cap || mid <= worst.a || mid >= worst.b ||
            subdivisions >= quad_interval_cap) {
            frozen_value += worst.value;
            frozen_error += worst.error;
            continue;
        }
        const auto left = detail::gk15(f, worst.a, mid, worst.depth + 1);
        const auto right = detail::gk15(f, mid, worst.b, worst.depth + 1);
        ++subdivisions;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        active.push(left);
        active.push(right);
    }

    // Re-sum from the pieces to shed the drift of the running updates.
    double value = frozen_value;
    double error = frozen_error;
    while (!active.empty()) {
        value += active.top().value;
        error += active.top().error;
        active.pop();
    }
    total_value = value;
    if (error > target()) {
        throw ConvergenceError("adaptive_quad: depth cap reached with error " + std::to_string(error),
                               value);
    }
    return {value, error, subdivisions};
}

/// Sums sum_{n>=0} term(n) for an alternating series whose magnitudes decrease
/// convexly to zero. Terms are accumulated in consecutive pairs. With S_n the sum
/// of the first n terms and d_n = |t_n| - |t_{n+1}|, the tail R_n lies between
/// t_n/2 and t_n/2 + (t_n + t_{n+1})/2, so the midpoint is returned with error
/// bound d_n/4.
template <class Term>
SeriesValue alt_series_sum(Term&& term, double tol, std::size_t cap = 1000000) {
    if (!(tol > 0.0)) throw DomainError("alt_series_sum: tol must be > 0");
    double sum = 0.0;
    double compensation = 0.0;
    std::size_t n = 0;
    for (;;) {
        const double t0 = term(n);
        const double t1 = term(n + 1);
        const double bound = std::fabs(std::fabs(t0) - std::fabs(t1)) / 4.0;
        if (bound <= tol || n >= cap) {
            const double tail = 0.5 * t0 + 0.25 * (t0 + t1);
            return {sum + (tail - compensation), bound, n, bound <= tol};
        }
        // Kahan summation keeps 1e6 pair sums at full precision.
        const double y = (t0 + t1) - compensation;
        const double s = sum + y;
        compensation = (s - sum) - y;
        sum = s;
        n += 2;
    }
}

/// Central difference of order 1 or 2 with step eps^(1/3) resp. eps^(1/4), scaled
/// by max(1, |x|) and rounded to a power of two so x +- h is exact.
template <class F>
double finite_diff(F&& f, double x, int order) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double scale = std::max(1.0, std::fabs(x));
    auto pow2 = [](double h) { return std::exp2(std::round(std::log2(h))); };
    if (order == 1) {
        const double h = pow2(std::cbrt(eps) * scale);
        return (f(x + h) - f(x - h)) / (2.0 * h);
    }
    if (order == 2) {
        const double h = pow2(std::sqrt(std::sqrt(eps)) * scale);
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    }
    throw ParameterError("finite_diff: order must be 1 or 2");
}

/// Outcome of a sampled complete-monotonicity probe.
struct CmVerdict {
    bool pass = true;
    int order = -1;            // order j of the first violation
    double x = 0.0;            // base point of the first violation
    double value = 0.0;        // (-1)^j Delta_h^j f(x) at the violation
    std::size_t points = 0;    // base points checked
    double worst_margin = 0.0; // min over checks of (-1)^j Delta^j f + 1e-9 |f|, normalised by |f|
};

/// Checks (-1)^j Delta_h^j f(x) >= -1e-9 |f(x)| for j = 0..max_order at every base
/// point x = x_lo + i h with x + max_order h <= x_hi.
template <class F>
CmVerdict cm_probe(F&& f, double x_lo, double x_hi, double h, int max_order) {
    if (!(h > 0.0) || max_order < 0) throw ParameterError("cm_probe: need h > 0 and max_order >= 0");
    if (x_lo + max_order * h > x_hi * (1.0 + 1e-12)) {
        throw ParameterError("cm_probe: x_lo + max_order h must not exceed x_hi");
    }
    const auto n_base = static_cast<std::size_t>(
        std::floor((x_hi - x_lo - max_order * h) / h * (1.0 + 1e-12))) + 1;
    const std::size_t n_values = n_base + static_cast<std::size_t>(max_order);
    std::vector<double> values(n_values);
    for (std::size_t i = 0; i < n_values; ++i) values[i] = f(x_lo + static_cast<double>(i) * h);

    // table[j][i] = Delta_h^j f(x_lo + i h)
    std::vector<std::vector<double>> table{values};
    for (int j = 1; j <= max_order; ++j) {
        const auto& prev = table.back();
        std::vector<double> next(prev.size() - 1);
        for (std::size_t i = 0; i < next.size(); ++i) next[i] = prev[i + 1] - prev[i];
        table.push_back(std::move(next));
    }

    CmVerdict verdict;
    verdict.points = n_base;
    verdict.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_base; ++i) {
        const double fx = std::fabs(values[i]);
        for (int j = 0; j <= max_order; ++j) {
            const double signed_diff = (j % 2 == 0 ? 1.0 : -1.0) * table[static_cast<std::size_t>(j)][i];
            const double margin = signed_diff + 1e-9 * fx;
            verdict.worst_margin = std::min(verdict.worst_margin, fx > 0 ? margin / fx : margin);
            if (margin < 0.0 && verdict.pass) {
                verdict.pass = false;
                verdict.order = j;
                verdict.x = x_lo + static_cast<double>(i) * h;
                verdict.value = signed_diff;
            }
        }
    }
    return verdict;
}

enum class FitMode { ratio, offset };

inline const char* to_string(FitMode m) { return m == FitMode::ratio ? "ratio" : "offset"; }

/// Fitted constant c in lhs = c * rhs (ratio) or lhs = rhs + c (offset).
struct DiscrepancyFit {
    FitMode mode = FitMode::ratio;
    double constant = 0.0;
    double residual_rms = 0.0;
    std::size_t n_points = 0;
};

/// Ratio mode: c = sign * geometric mean of |lhs/rhs|, residual = rms of the
/// log-ratio deviations (infinite if the ratios change sign). Offset mode:
/// c = mean(lhs - rhs), residual = rms of (lhs - rhs - c).
inline DiscrepancyFit fit_discrepancy(std::span<const std::pair<double, double>> pairs, FitMode mode) {
    if (pairs.size() < 3) throw ParameterError("fit_discrepancy: need at least 3 pairs");
    DiscrepancyFit fit;
    fit.mode = mode;
    fit.n_points = pairs.size();
    const double n = static_cast<double>(pairs.size());
    if (mode == FitMode::ratio) {
        std::vector<double> logs;
        logs.reserve(pairs.size());
        int positive = 0;
        for (const auto& [lhs, rhs] : pairs) {
            if (rhs == 0.0 || lhs == 0.0 || !std::isfinite(lhs) || !std::isfinite(rhs)) {
                throw ParameterError("fit_discrepancy: ratio mode needs finite nonzero sides");
            }
            const double r = lhs / rhs;
            if (r > 0) ++positive;
            logs.push_back(std::log(std::fabs(r)));
        }
        double mean = 0.0;
        for (double v : logs) mean += v;
        mean /= n;
        double ss = 0.0;
        for (double v : logs) ss += (v - mean) * (v - mean);
        const bool mixed = positive != 0 && positive != static_cast<int>(pairs.size());
        fit.constant = (positive > 0 ? 1.0 : -1.0) * std::exp(mean);
        fit.residual_rms = mixed ? std::numeric_limits<double>::infinity() : std::sqrt(ss / n);
    } else {
        double mean = 0.0;
        for (const auto& [lhs, rhs] : pairs) {
            if (!std::isfinite(lhs) || !std::isfinite(rhs)) {
                throw ParameterError("fit_discrepancy: offset mode needs finite sides");
            }
            mean += lhs - rhs;
        }
        mean /= n;
        double ss = 0.0;
        for (const auto& [lhs, rhs] : pairs) ss += (lhs - rhs - mean) * (lhs - rhs - mean);
        fit.constant = mean;
        fit.residual_rms = std::sqrt(ss / n);
    }
    return fit;
}

}  // namespace ksf
