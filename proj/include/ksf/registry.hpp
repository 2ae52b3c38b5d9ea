#pragma once

// Identity catalogue and grid runner. Every entry pairs two independently
// computed sides over a parameter grid; suspected misprints are registered twice,
// once as printed (expected to fail) and once corrected (expected to pass).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ksf/errors.hpp"
#include "ksf/furdui.hpp"
#include "ksf/hadamard.hpp"
#include "ksf/k_core.hpp"
#include "ksf/nielsen_beta.hpp"
#include "ksf/oracles.hpp"
#include "ksf/scalar_core.hpp"
#include "ksf/types.hpp"

namespace ksf {

enum class Comparison { absolute, relative, inequality, fit_ratio, fit_offset };

inline const char* to_string(Comparison c) {
    switch (c) {
        case Comparison::absolute: return "absolute";
        case Comparison::relative: return "relative";
        case Comparison::inequality: return "inequality";
        case Comparison::fit_ratio: return "fit-ratio";
        case Comparison::fit_offset: return "fit-offset";
    }
    return "?";
}

struct GridSpec {
    std::vector<double> k_values{0.5, 1.0, 2.0, constants::pi};
    std::vector<double> x_values{0.1, 0.35, 0.7, 1.0, 1.5, 2.5, 5.0};
    std::map<std::string, std::vector<int>> integer_params{{"m", {1, 2, 3, 4, 5, 6}}, {"n", {1, 2, 3}}};
    double exclusion_radius = 1e-3;

    void validate() const {
        for (double k : k_values) {
            if (!(std::isfinite(k) && k > 0.0)) throw DomainError("GridSpec: k values must be finite and > 0");
        }
        for (double x : x_values) {
            if (!std::isfinite(x)) throw DomainError("GridSpec: x values must be finite");
        }
        if (!(exclusion_radius >= 0.0)) throw DomainError("GridSpec: exclusion_radius must be >= 0");
    }

    std::vector<int> ints(const std::string& name) const {
        const auto it = integer_params.find(name);
        return it == integer_params.end() ? std::vector<int>{} : it->second;
    }
};

/// Lhs = c rhs or lhs = rhs + c fitted per group of parameters, after dividing
/// both sides by scale(params) when given.
struct FitSpec {
    FitMode mode = FitMode::ratio;
    std::vector<std::string> group_by;
    std::function<double(const Params&)> scale;
};

struct IdentityEntry {
    std::string id;
    std::string anchor;
    Comparison comparison = Comparison::relative;
    double default_tol = 1e-10;
    Verdict expectation = Verdict::pass;
    bool strict = false;  // inequality entries: lhs < rhs rather than lhs <= rhs + tol
    std::function<std::vector<Params>(const GridSpec&)> points;
    std::function<std::pair<double, double>(const Params&)> eval;
    std::function<double(const Params&)> pole_distance;  // distance to the nearest pole, if any
    std::optional<FitSpec> fit;
};

inline double param(const Params& p, std::string_view name) {
    for (const auto& [key, value] : p) {
        if (key == name) return value;
    }
    throw ParameterError("missing parameter " + std::string(name));
}

/// Shortest round-trip decimal; non-finite values become "null".
inline std::string format_number(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace detail {

using Points = std::vector<Params>;

inline std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// x = t k for every grid t passing keep(t).
template <class Keep>
Points scaled_points(const GridSpec& g, Keep keep) {
    Points out;
    for (double k : g.k_values) {
        for (double t : sorted_unique(g.x_values)) {
            if (keep(t)) out.push_back({{"k", k}, {"x", t * k}});
        }
    }
    return out;
}

inline Points scaled_points(const GridSpec& g) {
    return scaled_points(g, [](double) { return true; });
}

inline Points positive_scaled(const GridSpec& g) {
    return scaled_points(g, [](double t) { return t > 0.0; });
}

inline Points inside_unit(const GridSpec& g) {
    return scaled_points(g, [](double t) { return t > 0.0 && t < 1.0; });
}

// x = +-t k for grid t in (0, 1).
inline Points symmetric_inside(const GridSpec& g) {
    Points out;
    for (double k : g.k_values) {
        for (double t : sorted_unique(g.x_values)) {
            if (t > 0.0 && t < 1.0) {
                out.push_back({{"k", k}, {"x", -t * k}});
                out.push_back({{"k", k}, {"x", t * k}});
            }
        }
    }
    return out;
}

inline Points k_m_points(const GridSpec& g) {
    Points out;
    for (double k : g.k_values) {
        for (int m : g.ints("m")) {
            if (m >= 1) out.push_back({{"k", k}, {"m", double(m)}});
        }
    }
    return out;
}

inline Points k_m_n_points(const GridSpec& g, std::optional<int> fixed_n = std::nullopt) {
    Points out;
    const auto ns = fixed_n ? std::vector<int>{*fixed_n} : g.ints("n");
    for (double k : g.k_values) {
        for (int m : g.ints("m")) {
            for (int n : ns) {
                if (m >= 1 && n >= 1 && n <= 8) out.push_back({{"k", k}, {"m", double(m)}, {"n", double(n)}});
            }
        }
    }
    return out;
}

inline constexpr double oracle_tol = 1e-12;

inline int as_int(double v) { return static_cast<int>(std::lround(v)); }

inline double alpha0_of(double k) {
    // Memoised: the runner asks for the same few k repeatedly.
    static std::map<double, double> cache;
    const auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    const double root = alpha0_solve(KScale(k), 1e-12).root;
    cache.emplace(k, root);
    return root;
}

inline Points superadditive_points(const GridSpec& g) {
    Points out;
    const auto ts = sorted_unique(g.x_values);
    for (double k : g.k_values) {
        const double a = alpha0_of(k);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (ts[i] < 0.0) continue;
            for (std::size_t j = i; j < ts.size(); ++j) {
                out.push_back({{"k", k}, {"x", a + (0.01 + ts[i]) * k}, {"y", a + (0.01 + ts[j]) * k}});
            }
        }
    }
    return out;
}

inline std::pair<double, double> superadditive_sides(const Params& p) {
    const auto r = superadditivity_check_43(KScale(param(p, "k")), param(p, "x"), param(p, "y"));
    return {r.lhs, r.rhs};
}

inline int taylor_order(double ratio, double tol, double k) {
    if (ratio == 0.0) return 1;
    const double need = std::log(tol * k * (1.0 - ratio)) / std::log(ratio);
    return std::clamp(static_cast<int>(std::ceil(need)) + 1, 1, 4000);
}

inline double furdui_oracle_value(const Params& p) {
    return furdui_oracle(KScale(param(p, "k")), as_int(param(p, "m")), oracle_tol).value;
}

inline double k_power_m(const Params& p) { return std::pow(param(p, "k"), param(p, "m")); }

inline std::vector<IdentityEntry> build_registry() {
    using P = const Params&;
    std::vector<IdentityEntry> r;
    auto add = [&r](IdentityEntry e) { r.push_back(std::move(e)); };
    auto kk = [](P p) { return KScale(param(p, "k")); };

    // Gamma_k and its derivatives.
    add({"EQ1.1", "Gamma_k(x+k) = x Gamma_k(x)", Comparison::relative, 1e-11, Verdict::pass, false,
         [](const GridSpec& g) { return positive_scaled(g); },
         [kk](P p) {
             const double x = param(p, "x");
             return std::pair{gamma_k(kk(p), x + param(p, "k")), x * gamma_k(kk(p), x)};
         },
         nullptr, std::nullopt});
    add({"EQ1.2", "psi_k(x) = (ln k - gamma)/k - 1/x + sum x/(nk(nk+x))", Comparison::relative, 1e-9,
         Verdict::pass, false, [](const GridSpec& g) { return positive_scaled(g); },
         [kk](P p) {
             const double x = param(p, "x");
             return std::pair{psi_k(kk(p), x), psi_k_series(kk(p), x, 1e-11).value};
         },
         nullptr, std::nullopt});
    add({"EQ1.3", "psi_k^(m)(x) = (-1)^(m+1) m! sum (nk+x)^(-m-1)", Comparison::relative, 1e-9, Verdict::pass,
         false,
         [](const GridSpec& g) {
             Points out;
             for (auto& p : positive_scaled(g)) {
                 for (int m : {1, 2, 3}) {
                     auto q = p;
                     q.emplace_back("m", m);
                     out.push_back(q);
                 }
             }
             return out;
         },
         [kk](P p) {
             const double x = param(p, "x");
             const int m = as_int(param(p, "m"));
             const double lhs = psi_k_m(kk(p), m, x);
             return std::pair{lhs, psi_k_m_series(kk(p), m, x, 1e-11 * std::max(1.0, std::fabs(lhs))).value};
         },
         nullptr, std::nullopt});
    add({"LEM2.1", "Gamma_k(x) = k^(x/k-1) Gamma(x/k)", Comparison::relative, 1e-12, Verdict::pass, false,
         [](const GridSpec& g) { return positive_scaled(g); },
         [kk](P p) {
             const double k = param(p, "k");
             const double q = param(p, "x") / k;
             return std::pair{gamma_k(kk(p), param(p, "x")), std::pow(k, q - 1.0) * std::tgamma(q)};
         },
         nullptr, std::nullopt});
    auto reflection_points = [](const GridSpec& g) { return positive_scaled(g); };
    auto reflection_pole = [](P p) {
        const double q = param(p, "x") / param(p, "k");
        return std::fabs(q - std::nearbyint(q));
    };
    add({"EQ2.2-printed", "Gamma_k(x) Gamma_k(k-x) = pi / sin(pi x/k)", Comparison::fit_ratio, 1e-10,
         Verdict::fail, false, reflection_points,
         [kk](P p) {
             const double x = param(p, "x");
             const double k = param(p, "k");
             return std::pair{gamma_k(kk(p), x) * gamma_k(kk(p), k - x), constants::pi / sin_pi(x / k)};
         },
         reflection_pole, FitSpec{FitMode::ratio, {"k"}, nullptr}});
    add({"EQ2.2-corrected", "Gamma_k(x) Gamma_k(k-x) = (pi/k) / sin(pi x/k)", Comparison::relative, 1e-10,
         Verdict::pass, false, reflection_points,
         [kk](P p) {
             const double x = param(p, "x");
             const double k = param(p, "k");
             return std::pair{gamma_k(kk(p), x) * gamma_k(kk(p), k - x), constants::pi / k / sin_pi(x / k)};
         },
         reflection_pole, std::nullopt});
    add({"LEM2.3", "int_0^u x^(a-1) (1+bx)^(-v) dx = u^a/a F(v,a;1+a;-bu)", Comparison::relative, 1e-7,
         Verdict::pass, false,
         [](const GridSpec& g) {
             Points out;
             for (double k : g.k_values) {
                 for (double t : sorted_unique(g.x_values)) {
                     if (!(t > 0.0 && t <= 1.0)) continue;
                     for (int a : g.ints("m")) {
                         for (int v : g.ints("n")) {
                             if (a >= 1 && v >= 1) out.push_back({{"k", k}, {"t", t}, {"a", double(a)}, {"v", double(v)}});
                         }
                     }
                 }
             }
             return out;
         },
         [](P p) {
             const double u = param(p, "k");
             const double b = param(p, "t") / u;
             const double a = param(p, "a");
             const double v = param(p, "v");
             const auto q = adaptive_quad([&](double x) { return std::pow(x, a - 1.0) * std::pow(1.0 + b * x, -v); },
                                          0.0, u, 1e-12 * std::pow(u, a));
             return std::pair{q.value, std::pow(u, a) / a * gauss_2f1(v, a, 1.0 + a, -b * u).value};
         },
         nullptr, std::nullopt});
    add({"LEM2.4", "psi_k(x+k) = psi_k(x) + 1/x", Comparison::relative, 1e-11, Verdict::pass, false,
         [](const GridSpec& g) { return positive_scaled(g); },
         [kk](P p) {
             const double x = param(p, "x");
             return std::pair{psi_k(kk(p), x + param(p, "k")), psi_k(kk(p), x) + 1.0 / x};
         },
         nullptr, std::nullopt});

    // Inequalities around beta_k.
    add({"LEM2.5", "x beta_k(x) completely monotonic (sampled differences to order 6)", Comparison::inequality, 0.0,
         Verdict::pass, false,
         [](const GridSpec& g) {
             Points out;
             for (double k : g.k_values) out.push_back({{"k", k}});
             return out;
         },
         [kk](P p) {
             const double k = param(p, "k");
             const auto v = cm_probe([&](double x) { return x_beta_k(kk(p), x); }, 0.1 * k, 5.0 * k, 0.1 * k, 6);
             return std::pair{0.0, v.worst_margin};
         },
         nullptr, std::nullopt});
    add({"LEM2.6", "2 beta_k'^2 - beta_k'' beta_k > 0", Comparison::inequality, 0.0, Verdict::pass, true,
         [](const GridSpec& g) { return positive_scaled(g); },
         [kk](P p) { return std::pair{0.0, lemma26_margin(kk(p), param(p, "x"))}; }, nullptr, std::nullopt});
    add({"LEM2.7", "lambda(x) = x beta_k'(x)/beta_k(x)^2 decreasing", Comparison::inequality, 0.0, Verdict::pass,
         true,
         [](const GridSpec& g) {
             Points out;
             const auto ts = sorted_unique(g.x_values);
             for (double k : g.k_values) {
                 for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
                     if (ts[i] > 0.0) out.push_back({{"k", k}, {"x", ts[i] * k}, {"y", ts[i + 1] * k}});
                 }
             }
             return out;
         },
         [kk](P p) { return std::pair{lambda_27(kk(p), param(p, "y")), lambda_27(kk(p), param(p, "x"))}; },
         nullptr, std::nullopt});

    // Furdui-type moments.
    add({"THM3.1", "int_0^k x^m psi_k = k^m (ln k - gamma)/(m+1) - k^m/m + k^m sum (-1)^s zeta(s)/(m+s)",
         Comparison::relative, 1e-8, Verdict::pass, false, k_m_points,
         [kk](P p) {
             return std::pair{furdui_oracle_value(p), thm31_series(kk(p), as_int(param(p, "m")), 1e-13).value};
         },
         nullptr, std::nullopt});
    auto thm32 = [kk](Thm32Variant v) {
        return [kk, v](P p) {
            return std::pair{furdui_oracle_value(p), thm32_series(kk(p), as_int(param(p, "m")), 1e-13, v).value};
        };
    };
    add({"THM3.2-printed", "k^m (ln k - m gamma)/(m+1) - k^m/m + m k^m sum (-1)^(s+1) zeta(s)/(s(m+s))",
         Comparison::fit_offset, 1e-8, Verdict::fail, false, k_m_points, thm32(Thm32Variant::as_printed), nullptr,
         FitSpec{FitMode::offset, {}, [](P p) { return param(p, "m") * k_power_m(p) / (param(p, "m") + 1.0); }}});
    add({"THM3.2-corrected", "k^m (ln k + m gamma)/(m+1) - k^m/m + m k^m sum (-1)^(s+1) zeta(s)/(s(m+s))",
         Comparison::relative, 1e-8, Verdict::pass, false, k_m_points, thm32(Thm32Variant::sign_variant), nullptr,
         std::nullopt});
    auto thm33 = [kk](Thm33Variant v) {
        return [kk, v](P p) {
            return std::pair{furdui_oracle_value(p), thm33_series(kk(p), as_int(param(p, "m")), 1e-12, v).value};
        };
    };
    add({"THM3.3-printed", "ln Gamma_k(x) = (ln k - gamma)x/k - 3/2 ln x - 1/2 ln(pi/k) - ...",
         Comparison::fit_offset, 1e-8, Verdict::fail, false, k_m_points, thm33(Thm33Variant::as_printed), nullptr,
         FitSpec{FitMode::offset, {"m"}, k_power_m}});
    add({"THM3.3-corrected", "ln Gamma_k(x) = (ln k - gamma)x/k - 1/2 ln x + 1/2 ln(pi/k) - ...",
         Comparison::relative, 1e-8, Verdict::pass, false, k_m_points, thm33(Thm33Variant::corrected), nullptr,
         std::nullopt});
    add({"THM3.3-audit", "int_0^k x^m psi_k = -m int_0^k x^(m-1) ln Gamma_k", Comparison::relative, 1e-8,
         Verdict::pass, false, k_m_points, thm33(Thm33Variant::lnGamma_audit), nullptr, std::nullopt});
    auto thm34 = [kk](Thm34Variant v) {
        return [kk, v](P p) {
            return std::pair{furdui_oracle_value(p), thm34_recursion(kk(p), as_int(param(p, "m")),
                                                                    as_int(param(p, "n")), 1e-10, v).value};
        };
    };
    add({"THM3.4-printed", "... + (-1)^(n+1) k^m n!/m - sum n! k^m F(n+1,m+n+1;m+n+2;-1/i) / (...)",
         Comparison::fit_offset, 1e-6, Verdict::fail, false, [](const GridSpec& g) { return k_m_n_points(g); },
         thm34(Thm34Variant::as_printed), nullptr, FitSpec{FitMode::offset, {"m", "n"}, k_power_m}});
    add({"THM3.4-corrected", "... - n! k^m/(m (m+1)...(m+n)) - sum n! k^m F(n+1,m+n+1;m+n+2;-1/i) / (...)",
         Comparison::relative, 1e-6, Verdict::pass, false, [](const GridSpec& g) { return k_m_n_points(g); },
         thm34(Thm34Variant::corrected), nullptr, std::nullopt});
    add({"EQ3.10-printed", "k^(m+1) psi_k(k)/(m+1) + k^m/m - sum k^m F(2,m+2;m+3;-1/i) / ((m+1)(m+2) i^2)",
         Comparison::fit_offset, 1e-6, Verdict::fail, false, [](const GridSpec& g) { return k_m_n_points(g, 1); },
         thm34(Thm34Variant::as_printed), nullptr, FitSpec{FitMode::offset, {"m"}, k_power_m}});
    add({"EQ3.10-corrected", "k^(m+1) psi_k(k)/(m+1) - k^m/(m(m+1)) - sum k^m F(2,m+2;m+3;-1/i) / ((m+1)(m+2) i^2)",
         Comparison::relative, 1e-6, Verdict::pass, false, [](const GridSpec& g) { return k_m_n_points(g, 1); },
         thm34(Thm34Variant::corrected), nullptr, std::nullopt});
    auto glaisher_points = [](const GridSpec& g) {
        Points out;
        for (double k : g.k_values) out.push_back({{"k", k}, {"m", 2.0}});
        return out;
    };
    auto glaisher = [](double c) {
        return [c](P p) {
            const double k = param(p, "k");
            return std::pair{furdui_oracle_value(p), k * k * (std::log(k) / 3.0 + c)};
        };
    };
    const double ln_a = std::log(constants::glaisher_A);
    add({"FURDUI-A-printed", "int_0^1 x^2 psi(x) dx = ln(A/sqrt(2 pi))", Comparison::fit_offset, 1e-8,
         Verdict::fail, false, glaisher_points, glaisher(ln_a - constants::half_ln_2pi), nullptr,
         FitSpec{FitMode::offset, {}, k_power_m}});
    add({"FURDUI-A-corrected", "int_0^1 x^2 psi(x) dx = ln(A^2/sqrt(2 pi))", Comparison::relative, 1e-8,
         Verdict::pass, false, glaisher_points, glaisher(2.0 * ln_a - constants::half_ln_2pi), nullptr,
         std::nullopt});
    add({"FURDUI-SCALING", "int_0^k x^m psi_k = k^m (ln k/(m+1) + int_0^1 x^m psi)", Comparison::relative, 1e-9,
         Verdict::pass, false, k_m_points,
         [](P p) {
             const int m = as_int(param(p, "m"));
             const double unit = furdui_oracle(KScale(1.0), m, oracle_tol).value;
             return std::pair{furdui_oracle_value(p), k_power_m(p) * (std::log(param(p, "k")) / (m + 1.0) + unit)};
         },
         nullptr, std::nullopt});

    // Hadamard k-gamma.
    add({"EQ4.5", "H_k(x) = (psi_k(k - x/2) - psi_k(k/2 - x/2)) / (2 Gamma_k(k - x))", Comparison::relative, 1e-10,
         Verdict::pass, false,
         [](const GridSpec& g) {
             Points out;
             for (auto& p : positive_scaled(g)) {
                 const double k = param(p, "k");
                 out.push_back({{"k", k}, {"x", k - param(p, "x")}});
             }
             return out;
         },
         [kk](P p) {
             const double k = param(p, "k");
             const double x = param(p, "x");
             const double def = (psi_k(kk(p), k - x / 2.0) - psi_k(kk(p), (k - x) / 2.0)) / 2.0 * rgamma_k(kk(p), k - x);
             return std::pair{hadamard_k(kk(p), x), def};
         },
         nullptr, std::nullopt});
    add({"HAD-SCALING", "H_k(x) = k^(x/k-1) H(x/k)", Comparison::relative, 1e-10, Verdict::pass, false,
         [](const GridSpec& g) {
             auto out = scaled_points(g);
             for (auto& p : positive_scaled(g)) out.push_back({{"k", param(p, "k")}, {"x", -param(p, "x")}});
             return out;
         },
         [kk](P p) {
             const double k = param(p, "k");
             const double x = param(p, "x");
             return std::pair{hadamard_k(kk(p), x), std::pow(k, x / k - 1.0) * hadamard_k(KScale(1.0), x / k)};
         },
         nullptr, std::nullopt});
    add({"HAD-UNIT", "H_k(k) = 1", Comparison::absolute, 1e-12, Verdict::pass, false,
         [](const GridSpec& g) {
             Points out;
             for (double k : g.k_values) out.push_back({{"k", k}});
             return out;
         },
         [kk](P p) { return std::pair{hadamard_k(kk(p), param(p, "k")), 1.0}; }, nullptr, std::nullopt});
    add({"HAD-FACTORIAL", "H_k(nk) = k^(n-1) (n-1)!", Comparison::relative, 1e-10, Verdict::pass, false,
         [](const GridSpec& g) {
             Points out;
             for (double k : g.k_values) {
                 for (int n = 1; n <= 5; ++n) out.push_back({{"k", k}, {"n", double(n)}});
             }
             return out;
         },
         [kk](P p) {
             const double k = param(p, "k");
             const int n = as_int(param(p, "n"));
             return std::pair{hadamard_k(kk(p), n * k), std::pow(k, n - 1) * factorial(n - 1)};
         },
         nullptr, std::nullopt});
    add({"THM4.1", "H_k(x+k) = x H_k(x) + 1/Gamma_k(k-x)", Comparison::relative, 1e-10, Verdict::pass, false,
         [](const GridSpec& g) {
             auto out = scaled_points(g);
             for (auto& p : positive_scaled(g)) out.push_back({{"k", param(p, "k")}, {"x", -param(p, "x")}});
             return out;
         },
         [kk](P p) { return functional_eq_41(kk(p), param(p, "x")); }, nullptr, std::nullopt});
    auto eq47_points = [](const GridSpec& g) {
        Points out;
        for (auto& p : scaled_points(g)) {
            for (int n : g.ints("n")) {
                if (n < 1 || n > 50) continue;
                auto q = p;
                q.emplace_back("n", n);
                out.push_back(q);
            }
        }
        return out;
    };
    auto eq47 = [kk](ClosedFormVariant v) {
        return [kk, v](P p) {
            const double x = param(p, "x");
            const int n = as_int(param(p, "n"));
            return std::pair{recursion_47(kk(p), x, n), recursion_47_closed_form(kk(p), x, n, v)};
        };
    };
    add({"EQ4.7-printed", "H_k(x+nk) = [x+(n-1)k]...(x+1) x H_k(x) + ...", Comparison::relative, 1e-10,
         Verdict::fail, false, eq47_points, eq47(ClosedFormVariant::as_printed), nullptr, std::nullopt});
    add({"EQ4.7-corrected", "H_k(x+nk) = prod_j (x+jk) H_k(x) + sum_i prod_{j>i} (x+jk) / Gamma_k(k-x-ik)",
         Comparison::relative, 1e-10, Verdict::pass, false, eq47_points, eq47(ClosedFormVariant::corrected), nullptr,
         std::nullopt});
    add({"EQ4.8-printed", "H_k(x) = Gamma_k(x)/k - Gamma_k(x) sin(pi x/k) beta_k(x)/pi", Comparison::fit_ratio,
         1e-10, Verdict::fail, false, [](const GridSpec& g) { return positive_scaled(g); },
         [kk](P p) { return representation_48(kk(p), param(p, "x")); }, nullptr,
         FitSpec{FitMode::ratio, {"k"}, nullptr}});
    add({"EQ4.8-corrected", "H_k(x) = Gamma_k(x) (1 - k sin(pi x/k) beta_k(x)/pi)", Comparison::relative, 1e-10,
         Verdict::pass, false, [](const GridSpec& g) { return positive_scaled(g); },
         [kk](P p) { return std::pair{hadamard_k(kk(p), param(p, "x")), hadamard_k_luschny(kk(p), param(p, "x"))}; },
         nullptr, std::nullopt});
    add({"THM4.3", "k^(y/k) H_k(x) + k^(x/k) H_k(y) <= H_k(x+y), x, y >= alpha_0", Comparison::inequality, 1e-12,
         Verdict::pass, false, superadditive_points, superadditive_sides, nullptr, std::nullopt});
    add({"THM4.3-below", "k^(y/k) H_k(x) + k^(x/k) H_k(y) <= H_k(x+y), x = y < alpha_0", Comparison::inequality,
         1e-12, Verdict::fail, false,
         [](const GridSpec& g) {
             Points out;
             for (double k : g.k_values) {
                 const double a = alpha0_of(k);
                 for (double t : sorted_unique(g.x_values)) {
                     if (t > 0.0 && t < 1.0) out.push_back({{"k", k}, {"x", a - t * k}, {"y", a - t * k}});
                 }
             }
             return out;
         },
         superadditive_sides, nullptr, std::nullopt});
    add({"ALPHA0-SCALING", "alpha_0(k) = k alpha_0(1)", Comparison::absolute, 1e-8, Verdict::pass, false,
         [](const GridSpec& g) {
             Points out;
             for (double k : g.k_values) out.push_back({{"k", k}});
             return out;
         },
         [](P p) { return std::pair{alpha0_of(param(p, "k")), param(p, "k") * alpha0_of(1.0)}; }, nullptr,
         std::nullopt});
    auto lerch_points = [](const GridSpec& g) {
        Points out;
        for (double t : sorted_unique(g.x_values)) {
            if (t > 0.0 && t < 1.0) {
                out.push_back({{"x", -t}});
                out.push_back({{"x", t}});
            }
        }
        std::sort(out.begin(), out.end(), [](const Params& a, const Params& b) { return a[0].second < b[0].second; });
        return out;
    };
    add({"THM4.4-printed", "2x Phi(-1,1,-x) = Phi(1,1,1-x/2) - Phi(1,1,1/2-x/2)", Comparison::relative, 1e-10,
         Verdict::fail, false, lerch_points,
         [](P p) { return lerch_identity_410(param(p, "x"), LerchVariant::as_printed); }, nullptr, std::nullopt});
    add({"THM4.4-corrected", "2 Phi(-1,1,1-x) = Phi(1,1,1/2-x/2) - Phi(1,1,1-x/2)", Comparison::relative, 1e-10,
         Verdict::pass, false, lerch_points,
         [](P p) { return lerch_identity_410(param(p, "x"), LerchVariant::corrected); }, nullptr, std::nullopt});

    // Nielsen k-beta.
    auto telescope_points = [](const GridSpec& g) {
        Points out;
        for (double k : g.k_values) {
            for (double x : sorted_unique(g.x_values)) {
                if (!(x > 0.0)) continue;
                for (int n : g.ints("n")) {
                    if (n >= 1 && n <= 20) out.push_back({{"k", k}, {"x", x}, {"n", double(n)}});
                }
            }
        }
        return out;
    };
    auto telescope = [kk](TelescopeVariant v) {
        return [kk, v](P p) { return telescope_51(kk(p), param(p, "x"), as_int(param(p, "n")), v); };
    };
    add({"THM5.1-printed", "sum_m beta_k((2k)^m x) = psi_k(2^n k^n x) - psi_k(kx) - n ln2/k", Comparison::relative,
         1e-10, Verdict::fail, false, telescope_points, telescope(TelescopeVariant::as_printed), nullptr,
         std::nullopt});
    add({"THM5.1-corrected", "sum_m beta_k(2^m k x) = psi_k(2^n k x) - psi_k(kx) - n ln2/k", Comparison::relative,
         1e-10, Verdict::pass, false, telescope_points, telescope(TelescopeVariant::corrected), nullptr,
         std::nullopt});
    add({"EQ5.2-series", "beta_k(x) = sum (-1)^n/(x+nk)", Comparison::relative, 1e-8, Verdict::pass, false,
         [](const GridSpec& g) { return positive_scaled(g); },
         [kk](P p) {
             const double x = param(p, "x");
             return std::pair{beta_k(kk(p), x), beta_k_series(kk(p), x, 1e-12).value};
         },
         nullptr, std::nullopt});
    add({"EQ5.2-integral", "beta_k(x) = int_0^1 t^(x-1)/(1+t^k) dt", Comparison::relative, 1e-8, Verdict::pass,
         false, [](const GridSpec& g) { return positive_scaled(g); },
         [kk](P p) {
             const double x = param(p, "x");
             return std::pair{beta_k(kk(p), x), beta_k_integral(kk(p), x, 1e-12).value};
         },
         nullptr, std::nullopt});
    auto gauss_points = [](const GridSpec& g) {
        Points out;
        for (double x : sorted_unique(g.x_values)) {
            if (x > 0.0) out.push_back({{"x", x}});
        }
        return out;
    };
    auto legendre = [](double c) {
        return [c](P p) {
            const double x = param(p, "x");
            const double k = param(p, "k");
            const KScale ks(k);
            const double rhs = std::exp2(2.0 * x - 1.0) * std::pow(k, c) / std::sqrt(constants::pi) *
                               gamma_k(ks, k * x) * gamma_k(ks, k * x + k / 2.0);
            return std::pair{gamma_k(ks, 2.0 * k * x), rhs};
        };
    };
    auto legendre_points = [gauss_points](const GridSpec& g) {
        Points out;
        for (double k : g.k_values) {
            for (auto& p : gauss_points(g)) out.push_back({{"k", k}, {"x", param(p, "x")}});
        }
        return out;
    };
    add({"EQ5.5-printed", "Gamma_k(2kx) = 2^(2x-1)/sqrt(k pi) Gamma_k(kx) Gamma_k(kx + k/2)", Comparison::fit_ratio,
         1e-10, Verdict::fail, false, legendre_points, legendre(-0.5), nullptr,
         FitSpec{FitMode::ratio, {"k"}, nullptr}});
    add({"EQ5.5-corrected", "Gamma_k(2kx) = 2^(2x-1) sqrt(k)/sqrt(pi) Gamma_k(kx) Gamma_k(kx + k/2)",
         Comparison::relative, 1e-10, Verdict::pass, false, legendre_points, legendre(0.5), nullptr, std::nullopt});
    add({"EQ5.55", "psi_k(kx + k/2) = 2 psi_k(2kx) - psi_k(kx) - 2 ln2/k", Comparison::relative, 1e-10,
         Verdict::pass, false, legendre_points,
         [kk](P p) {
             const double k = param(p, "k");
             const double x = param(p, "x");
             return std::pair{psi_k(kk(p), k * x + k / 2.0), psi_k_duplication_rhs(kk(p), x)};
         },
         nullptr, std::nullopt});
    add({"THM5.3", "beta_k((x+k)/2) = int_0^inf e^(-xt)/cosh(kt) dt", Comparison::relative, 1e-8, Verdict::pass,
         false,
         [](const GridSpec& g) {
             Points out;
             for (auto& p : scaled_points(g)) {
                 const double k = param(p, "k");
                 const double x = param(p, "x") - 0.5 * k;
                 if (x > -k) out.push_back({{"k", k}, {"x", x}});
             }
             return out;
         },
         [kk](P p) {
             const double k = param(p, "k");
             const double x = param(p, "x");
             return std::pair{beta_k(kk(p), (x + k) / 2.0), beta_k_cosh_form(kk(p), x, 1e-12).value};
         },
         nullptr, std::nullopt});
    add({"THM5.4", "beta_k(x+k) = ln2/k + sum (-1)^m (1-2^-m) zeta(m+1) x^m / k^(m+1)", Comparison::relative, 1e-8,
         Verdict::pass, false, symmetric_inside,
         [kk](P p) {
             const double k = param(p, "k");
             const double x = param(p, "x");
             const int order = taylor_order(std::fabs(x) / k, 1e-12, k);
             return std::pair{beta_k(kk(p), x + k), beta_taylor_54(kk(p), x, order, 1e-12).value};
         },
         nullptr, std::nullopt});
    add({"THM5.5", "beta_k(x) = 1/x - 1/(x+k) + sum_n sum_i (-1)^(n+1) C(n,i) zeta(n+1) x^i / (2^(n+1) k^(i+1))",
         Comparison::relative, 1e-8, Verdict::pass, false, inside_unit,
         [kk](P p) {
             const double x = param(p, "x");
             return std::pair{beta_k(kk(p), x), beta_expansion_55(kk(p), x, 4000, 1e-12).value};
         },
         nullptr, std::nullopt});
    add({"EQ5.11", "beta_k(x+k) + beta_k(x) = 1/x", Comparison::relative, 1e-11, Verdict::pass, false,
         [](const GridSpec& g) { return positive_scaled(g); },
         [kk](P p) {
             const double x = param(p, "x");
             return std::pair{beta_k(kk(p), x + param(p, "k")) + beta_k(kk(p), x), 1.0 / x};
         },
         nullptr, std::nullopt});
    add({"REM5-LOWER", "1/x - ln2/k < beta_k(x), 0 < x < k", Comparison::inequality, 0.0, Verdict::pass, true,
         inside_unit,
         [kk](P p) {
             const double x = param(p, "x");
             return std::pair{remark_bounds(kk(p), x).lower, beta_k(kk(p), x)};
         },
         nullptr, std::nullopt});
    add({"REM5-UPPER", "beta_k(x) < 1/x, 0 < x < k", Comparison::inequality, 0.0, Verdict::pass, true, inside_unit,
         [kk](P p) {
             const double x = param(p, "x");
             return std::pair{beta_k(kk(p), x), remark_bounds(kk(p), x).upper};
         },
         nullptr, std::nullopt});
    add({"REM5-REFINED", "beta_k(x) < 1/x - ln2/k + pi^2 x/(12 k^2), 0 < x < k", Comparison::inequality, 0.0,
         Verdict::pass, true, inside_unit,
         [kk](P p) {
             const double x = param(p, "x");
             return std::pair{beta_k(kk(p), x), remark_bounds(kk(p), x).refined_upper};
         },
         nullptr, std::nullopt});
    add({"THM5.6", "2 beta_k(x) beta_k(k^2/x) / (beta_k(x) + beta_k(k^2/x)) <= ln2/k", Comparison::inequality,
         1e-14, Verdict::pass, false, [](const GridSpec& g) { return positive_scaled(g); },
         [kk](P p) {
             return std::pair{harmonic_mean_56(kk(p), param(p, "x")), constants::ln2 / param(p, "k")};
         },
         nullptr, std::nullopt});
    add({"THM5.6-EQUALITY", "harmonic mean at x = k equals beta_k(k) = ln2/k", Comparison::absolute, 1e-12,
         Verdict::pass, false,
         [](const GridSpec& g) {
             Points out;
             for (double k : g.k_values) out.push_back({{"k", k}});
             return out;
         },
         [kk](P p) {
             const double k = param(p, "k");
             return std::pair{harmonic_mean_56(kk(p), k), constants::ln2 / k};
         },
         nullptr, std::nullopt});

    std::sort(r.begin(), r.end(), [](const IdentityEntry& a, const IdentityEntry& b) { return a.id < b.id; });
    return r;
}

}  // namespace detail

inline const std::vector<IdentityEntry>& registry() {
    static const std::vector<IdentityEntry> entries = detail::build_registry();
    return entries;
}

inline const IdentityEntry& find_identity(std::string_view id) {
    for (const auto& e : registry()) {
        if (e.id == id) return e;
    }
    throw ParameterError("unknown identity id: " + std::string(id));
}

/// Verdict rule: absolute |l - r| <= tol; relative (and the fit modes)
/// |l - r| <= tol max(1, |l|, |r|); inequality l <= r + tol, or l < r when strict.
inline Verdict judge(const IdentityEntry& e, double lhs, double rhs, double tol) {
    if (!std::isfinite(lhs) || !std::isfinite(rhs)) return Verdict::fail;
    const double diff = std::fabs(lhs - rhs);
    switch (e.comparison) {
        case Comparison::absolute: return diff <= tol ? Verdict::pass : Verdict::fail;
        case Comparison::inequality:
            if (e.strict) return lhs < rhs ? Verdict::pass : Verdict::fail;
            return lhs <= rhs + tol ? Verdict::pass : Verdict::fail;
        case Comparison::relative:
        case Comparison::fit_ratio:
        case Comparison::fit_offset: {
            const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
            return diff <= tol * scale ? Verdict::pass : Verdict::fail;
        }
    }
    return Verdict::fail;
}

inline bool params_less(const Params& a, const Params& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const auto& x, const auto& y) {
                                            if (x.second != y.second) return x.second < y.second;
                                            return x.first < y.first;
                                        });
}

inline std::vector<IdentityReport> run_entry(const IdentityEntry& e, const GridSpec& grid,
                                             std::optional<double> tol_override = std::nullopt) {
    grid.validate();
    const double tol = tol_override.value_or(e.default_tol);
    if (!(tol >= 0.0)) throw DomainError("run_identity: tol must be >= 0");
    auto points = e.points(grid);
    std::sort(points.begin(), points.end(), params_less);
    std::vector<IdentityReport> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        IdentityReport rep;
        rep.identity_id = e.id;
        rep.params = p;
        if (e.pole_distance && e.pole_distance(p) < grid.exclusion_radius) {
            rep.verdict = Verdict::skip;
            rep.lhs = rep.rhs = rep.abs_diff = rep.rel_diff = std::numeric_limits<double>::quiet_NaN();
            rep.note = "pole";
            out.push_back(std::move(rep));
            continue;
        }
        try {
            const auto [lhs, rhs] = e.eval(p);
            rep.lhs = lhs;
            rep.rhs = rhs;
            rep.abs_diff = std::fabs(lhs - rhs);
            rep.rel_diff = relative_difference(lhs, rhs);
            rep.verdict = judge(e, lhs, rhs, tol);
        } catch (const std::exception& ex) {
            rep.lhs = rep.rhs = rep.abs_diff = rep.rel_diff = std::numeric_limits<double>::quiet_NaN();
            rep.verdict = Verdict::fail;
            rep.note = std::string("error: ") + ex.what();
        }
        out.push_back(std::move(rep));
    }
    return out;
}

/// All grid-point reports of one registered identity, ordered by parameters.
inline std::vector<IdentityReport> run_identity(std::string_view id, const GridSpec& grid,
                                                std::optional<double> tol_override = std::nullopt) {
    return run_entry(find_identity(id), grid, tol_override);
}

struct FitRecord {
    std::string group;  // e.g. "k=2" or "m=1,n=3"; empty for a single global fit
    DiscrepancyFit fit;
};

struct EntrySummary {
    std::string id;
    Verdict expectation = Verdict::pass;
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t skip = 0;
    double worst_rel_diff = 0.0;
    std::vector<FitRecord> fits;
    bool expectation_met = true;
};

struct RunSummary {
    std::vector<IdentityReport> reports;
    std::vector<EntrySummary> entries;

    /// FAILs in entries expected to pass.
    std::size_t unexpected_failures() const {
        std::size_t n = 0;
        for (const auto& e : entries) {
            if (e.expectation == Verdict::pass) n += e.fail;
        }
        return n;
    }
};

inline constexpr double fit_residual_limit = 1e-8;

inline std::vector<FitRecord> fit_entry(const IdentityEntry& e, const std::vector<IdentityReport>& reports) {
    std::vector<FitRecord> out;
    if (!e.fit) return out;
    std::map<std::string, std::vector<std::pair<double, double>>> groups;
    std::vector<std::string> order;
    for (const auto& r : reports) {
        if (r.verdict == Verdict::skip || !std::isfinite(r.lhs) || !std::isfinite(r.rhs)) continue;
        std::string label;
        for (const auto& name : e.fit->group_by) {
            if (!label.empty()) label += ",";
            label += name + "=" + format_number(param(r.params, name));
        }
        const double s = e.fit->scale ? e.fit->scale(r.params) : 1.0;
        if (!groups.count(label)) order.push_back(label);
        groups[label].emplace_back(r.lhs / s, r.rhs / s);
    }
    for (const auto& label : order) {
        const auto& pairs = groups[label];
        if (pairs.size() < 3) continue;
        try {
            out.push_back({label, fit_discrepancy(pairs, e.fit->mode)});
        } catch (const ParameterError&) {
            DiscrepancyFit bad;
            bad.mode = e.fit->mode;
            bad.constant = std::numeric_limits<double>::quiet_NaN();
            bad.residual_rms = std::numeric_limits<double>::infinity();
            bad.n_points = pairs.size();
            out.push_back({label, bad});
        }
    }
    return out;
}

inline EntrySummary summarize(const IdentityEntry& e, const std::vector<IdentityReport>& reports) {
    EntrySummary s;
    s.id = e.id;
    s.expectation = e.expectation;
    for (const auto& r : reports) {
        if (r.verdict == Verdict::skip) {
            ++s.skip;
            continue;
        }
        ++(r.verdict == Verdict::pass ? s.pass : s.fail);
        // An evaluation error leaves NaN sides; count it as unbounded.
        s.worst_rel_diff = std::isnan(r.rel_diff) ? std::numeric_limits<double>::infinity()
                                                  : std::max(s.worst_rel_diff, r.rel_diff);
    }
    s.fits = fit_entry(e, reports);
    if (e.expectation == Verdict::pass) {
        s.expectation_met = s.fail == 0;
    } else {
        bool clean = true;
        for (const auto& f : s.fits) clean = clean && f.fit.residual_rms < fit_residual_limit;
        s.expectation_met = s.fail > 0 && clean;
    }
    return s;
}

/// Every registered entry over the grid, or only the selected ids.
inline RunSummary run_all(const GridSpec& grid, std::optional<double> tol_override = std::nullopt,
                          const std::vector<std::string>& ids = {}) {
    RunSummary out;
    for (const auto& e : registry()) {
        if (!ids.empty() && std::find(ids.begin(), ids.end(), e.id) == ids.end()) continue;
        auto reports = run_entry(e, grid, tol_override);
        if (reports.empty()) continue;
        out.entries.push_back(summarize(e, reports));
        out.reports.insert(out.reports.end(), std::make_move_iterator(reports.begin()),
                           std::make_move_iterator(reports.end()));
    }
    return out;
}

namespace detail {

inline std::string json_string(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

}  // namespace detail

/// {"reports": [...], "summary": [...]}, one report object per line.
inline void write_json(std::ostream& os, const RunSummary& run) {
    using detail::json_string;
    os << "{\n  \"reports\": [";
    for (std::size_t i = 0; i < run.reports.size(); ++i) {
        const auto& r = run.reports[i];
        os << (i ? ",\n    " : "\n    ") << "{\"identity_id\": " << json_string(r.identity_id) << ", \"params\": {";
        for (std::size_t j = 0; j < r.params.size(); ++j) {
            os << (j ? ", " : "") << json_string(r.params[j].first) << ": " << format_number(r.params[j].second);
        }
        os << "}, \"lhs\": " << format_number(r.lhs) << ", \"rhs\": " << format_number(r.rhs)
           << ", \"abs_diff\": " << format_number(r.abs_diff) << ", \"rel_diff\": " << format_number(r.rel_diff)
           << ", \"verdict\": \"" << to_string(r.verdict) << "\", \"note\": " << json_string(r.note) << "}";
    }
    os << (run.reports.empty() ? "],\n" : "\n  ],\n") << "  \"summary\": [";
    for (std::size_t i = 0; i < run.entries.size(); ++i) {
        const auto& e = run.entries[i];
        os << (i ? ",\n    " : "\n    ") << "{\"id\": " << json_string(e.id) << ", \"expectation\": \""
           << to_string(e.expectation) << "\", \"pass\": " << e.pass << ", \"fail\": " << e.fail
           << ", \"skip\": " << e.skip << ", \"worst_rel_diff\": " << format_number(e.worst_rel_diff)
           << ", \"expectation_met\": " << (e.expectation_met ? "true" : "false") << ", \"fits\": [";
        for (std::size_t j = 0; j < e.fits.size(); ++j) {
            const auto& f = e.fits[j];
            os << (j ? ", " : "") << "{\"group\": " << json_string(f.group) << ", \"mode\": \""
               << to_string(f.fit.mode) << "\", \"constant\": " << format_number(f.fit.constant)
               << ", \"residual_rms\": " << format_number(f.fit.residual_rms)
               << ", \"n_points\": " << f.fit.n_points << "}";
        }
        os << "]}";
    }
    os << (run.entries.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

/// id, the union of parameter names (alphabetical), lhs, rhs, abs_diff, rel_diff, verdict.
inline void write_csv(std::ostream& os, const RunSummary& run) {
    std::set<std::string> names;
    for (const auto& r : run.reports) {
        for (const auto& kv : r.params) names.insert(kv.first);
    }
    os << "id";
    for (const auto& n : names) os << "," << n;
    os << ",lhs,rhs,abs_diff,rel_diff,verdict\n";
    for (const auto& r : run.reports) {
        os << r.identity_id;
        for (const auto& n : names) {
            os << ",";
            for (const auto& kv : r.params) {
                if (kv.first == n) os << format_number(kv.second);
            }
        }
        os << "," << format_number(r.lhs) << "," << format_number(r.rhs) << "," << format_number(r.abs_diff) << ","
           << format_number(r.rel_diff) << "," << to_string(r.verdict) << "\n";
    }
}

enum class Monotonicity { increasing, decreasing, neither };

inline const char* to_string(Monotonicity m) {
    switch (m) {
        case Monotonicity::increasing: return "increasing";
        case Monotonicity::decreasing: return "decreasing";
        case Monotonicity::neither: return "neither";
    }
    return "?";
}

struct ScanRow {
    double x = 0.0;
    double f_n = 0.0;
    double f_n1 = 0.0;
    double f_n2 = 0.0;
    double g = 0.0;
    bool skipped = false;  // denominator too close to zero
};

struct ScanTable {
    int n = 0;
    std::vector<ScanRow> rows;
    Monotonicity verdict = Monotonicity::neither;
    std::optional<double> first_violation;  // first x where the trend set by the first step reverses
};

/// g_n(x) = f^(n+1)(x) / (f^(n)(x) f^(n+2)(x)), f(x) = x beta_k(x), for n = 0..n_max
/// on the grid x values. Only evidence: whether g_n is monotone is an open question.
inline std::vector<ScanTable> openproblem_scan(KScale k, int n_max, const GridSpec& grid) {
    if (n_max < 0 || n_max > 4) throw ParameterError("openproblem_scan: n_max must lie in [0, 4]");
    std::vector<double> xs = grid.x_values;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || (i > 0 && !(xs[i] > xs[i - 1]))) {
            throw DomainError("openproblem_scan: x values must be positive and increasing");
        }
    }
    std::vector<ScanTable> out;
    for (int n = 0; n <= n_max; ++n) {
        ScanTable table;
        table.n = n;
        for (double x : xs) {
            ScanRow row;
            row.x = x;
            row.f_n = x_beta_k_derivative(k, n, x);
            row.f_n1 = x_beta_k_derivative(k, n + 1, x);
            row.f_n2 = x_beta_k_derivative(k, n + 2, x);
            const double den = row.f_n * row.f_n2;
            row.skipped = !(std::fabs(den) > 1e-300) || !std::isfinite(den);
            row.g = row.skipped ? std::numeric_limits<double>::quiet_NaN() : row.f_n1 / den;
            table.rows.push_back(row);
        }
        int direction = 0;
        double prev = std::numeric_limits<double>::quiet_NaN();
        bool broken = false;
        for (const auto& row : table.rows) {
            if (row.skipped) continue;
            if (!std::isnan(prev) && row.g != prev) {
                const int step = row.g > prev ? 1 : -1;
                if (direction == 0) {
                    direction = step;
                } else if (step != direction && !broken) {
                    broken = true;
                    table.first_violation = row.x;
                }
            }
            prev = row.g;
        }
        if (!broken && direction > 0) table.verdict = Monotonicity::increasing;
        if (!broken && direction < 0) table.verdict = Monotonicity::decreasing;
        out.push_back(std::move(table));
    }
    return out;
}

}  // namespace ksf
