#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ksf/nielsen_beta.hpp"

namespace {

using ksf::KScale;
using ksf::constants::ln2;
using ksf::constants::pi;

const double k_grid[] = {0.5, 1.0, 2.0, pi};
const double x_grid[] = {0.1, 0.35, 0.7, 1.0, 1.5, 2.5, 5.0};

TEST(BetaK, Values) {
    for (double k : k_grid) EXPECT_NEAR(ksf::beta_k(KScale(k), k), ln2 / k, 1e-15);
    EXPECT_NEAR(ksf::beta_k(KScale(1), 0.5), pi / 2, 1e-14);
    EXPECT_NEAR(ksf::beta_k(KScale(1), 2), 1 - ln2, 1e-15);
    EXPECT_NEAR(ksf::beta_k(KScale(1), 0.9), 0.78546451430167136514, 1e-14);
    EXPECT_NEAR(ksf::beta_k(KScale(2), 1), pi / 4, 1e-15);
    EXPECT_NEAR(ksf::beta_k(KScale(0.5), 0.3), 2.5375156554939945296, 1e-13);
    EXPECT_NEAR(ksf::beta_k(KScale(3), 0.2), 4.785979904927071795, 1e-13);
    EXPECT_THROW(ksf::beta_k(KScale(1), 0.0), ksf::DomainError);
}

TEST(BetaK, Recurrence) {
    for (double k : {0.5, 1.0, 2.0}) {
        for (double x : {0.1, 0.5, 1.0, 2.0, 5.0}) {
            EXPECT_NEAR(ksf::beta_k(KScale(k), x + k) + ksf::beta_k(KScale(k), x), 1.0 / x, 1e-11);
        }
    }
}

TEST(BetaK, ThreeRoutesAgree) {
    for (double k : k_grid) {
        for (double x : x_grid) {
            const double a = ksf::beta_k(KScale(k), x);
            const double b = ksf::beta_k_series(KScale(k), x, 1e-12).value;
            const double c = ksf::beta_k_integral(KScale(k), x, 1e-12).value;
            EXPECT_NEAR(a, b, 1e-8) << k << " " << x;
            EXPECT_NEAR(a, c, 1e-8) << k << " " << x;
            EXPECT_NEAR(b, c, 1e-8) << k << " " << x;
        }
    }
}

TEST(BetaK, Scaling) {
    for (double k : k_grid) {
        for (double x : x_grid) {
            EXPECT_NEAR(ksf::beta_k(KScale(k), x), ksf::beta_k(KScale(1), x / k) / k, 1e-11);
        }
    }
}

TEST(BetaKSeries, Values) {
    EXPECT_NEAR(ksf::beta_k_series(KScale(1), 1, 1e-12).value, ln2, 1e-12);
    EXPECT_NEAR(ksf::beta_k_series(KScale(2), 2, 1e-12).value, ln2 / 2, 1e-12);
    EXPECT_NEAR(ksf::beta_k_series(KScale(1), 3, 1e-12).value, ln2 - 0.5, 1e-12);
    EXPECT_THROW(ksf::beta_k_series(KScale(1), 1, 1e-14, 100), ksf::ConvergenceError);
}

TEST(BetaKIntegral, Values) {
    EXPECT_NEAR(ksf::beta_k_integral(KScale(1), 1, 1e-10).value, ln2, 1e-9);
    EXPECT_NEAR(ksf::beta_k_integral(KScale(2), 1, 1e-10).value, pi / 4, 1e-9);
    EXPECT_NEAR(ksf::beta_k_integral(KScale(1), 0.5, 1e-10).value, pi / 2, 1e-9);
    EXPECT_NEAR(ksf::beta_k_integral(KScale(0.5), 0.02, 1e-10).value, ksf::beta_k(KScale(0.5), 0.02), 1e-8);
}

TEST(BetaKCosh, Values) {
    EXPECT_NEAR(ksf::beta_k_cosh_form(KScale(1), 1, 1e-9).value, ln2, 1e-8);
    EXPECT_NEAR(ksf::beta_k_cosh_form(KScale(1), 0, 1e-9).value, pi / 2, 1e-8);
    EXPECT_NEAR(ksf::beta_k_cosh_form(KScale(2), 2, 1e-9).value, ln2 / 2, 1e-8);
    EXPECT_NEAR(ksf::beta_k_cosh_form(KScale(1.5), -1, 1e-9).value, 3.6150870949950881874, 1e-8);
    EXPECT_THROW(ksf::beta_k_cosh_form(KScale(1), -1, 1e-9), ksf::DomainError);
}

TEST(BetaKCosh, ShiftedPoints) {
    for (double k : {0.5, 1.0, 2.0}) {
        for (double t : {-0.9, -0.5, 0.0, 0.7, 3.0}) {
            const double x = t * k;
            EXPECT_NEAR(ksf::beta_k_cosh_form(KScale(k), x, 1e-10).value,
                        ksf::beta_k(KScale(k), (x + k) / 2), 1e-8);
        }
    }
}

TEST(BetaKDeriv, Values) {
    EXPECT_NEAR(ksf::beta_k_deriv(KScale(1), 1, 1), -pi * pi / 12, 1e-14);
    EXPECT_NEAR(ksf::beta_k_deriv(KScale(1), 2, 1), 1.8030853547393914281, 1e-13);
    EXPECT_NEAR(ksf::beta_k_deriv(KScale(2), 1, 2), -pi * pi / 48, 1e-14);
    EXPECT_THROW(ksf::beta_k_deriv(KScale(1), 3, 1), ksf::ParameterError);
}

TEST(BetaKDeriv, MatchesFiniteDifferences) {
    for (double k : k_grid) {
        for (double x : {0.35, 1.0, 2.5}) {
            auto b = [k](double t) { return ksf::beta_k(KScale(k), t); };
            auto b1 = [k](double t) { return ksf::beta_k_deriv(KScale(k), 1, t); };
            EXPECT_NEAR(ksf::beta_k_deriv(KScale(k), 1, x), ksf::finite_diff(b, x, 1), 1e-6 / (x * x));
            EXPECT_NEAR(ksf::beta_k_deriv(KScale(k), 2, x), ksf::finite_diff(b1, x, 1), 1e-5 / (x * x * x));
        }
    }
    auto b = [](double t) { return ksf::beta_k(KScale(1), t); };
    EXPECT_NEAR(ksf::finite_diff(b, 1.0, 1), -pi * pi / 12, 1e-6);
}

TEST(BetaTaylor, Values) {
    EXPECT_NEAR(ksf::beta_taylor_54(KScale(1), 0, 5).value, ln2, 1e-16);
    auto s = ksf::beta_taylor_54(KScale(1), 0.5, 60);
    EXPECT_TRUE(s.converged);
    EXPECT_NEAR(s.value, 0.42920367320510338077, 1e-10);
    EXPECT_NEAR(ksf::beta_taylor_54(KScale(2), -1, 80).value, pi / 4, 1e-9);
    EXPECT_THROW(ksf::beta_taylor_54(KScale(1), 1.0, 10), ksf::DomainError);
}

TEST(BetaTaylor, BoundIsValid) {
    for (double k : {0.5, 1.0, 2.0}) {
        for (double t : {-0.9, -0.5, 0.1, 0.5, 0.9}) {
            for (int order : {5, 20, 60}) {
                auto s = ksf::beta_taylor_54(KScale(k), t * k, order);
                EXPECT_LE(std::fabs(s.value - ksf::beta_k(KScale(k), t * k + k)), s.error_estimate + 1e-13);
            }
        }
    }
}

TEST(BetaTaylor, CoefficientsAlternateAndShrinkInsideRadius) {
    auto terms = ksf::beta_taylor_54_terms(KScale(2), 30);
    for (int m = 1; m < 30; ++m) {
        const double c0 = terms.coefficients[m];
        const double c1 = terms.coefficients[m + 1];
        EXPECT_LT(c0 * c1, 0.0);
        EXPECT_LT(std::fabs(c1) * std::pow(0.9 * 2, m + 1), std::fabs(c0) * std::pow(0.9 * 2, m) * 1.0001);
    }
}

TEST(BetaExpansion55, Values) {
    EXPECT_NEAR(ksf::beta_expansion_55(KScale(1), 0.5, 80).value, pi / 2, 1e-9);
    EXPECT_NEAR(ksf::beta_expansion_55(KScale(2), 1, 80).value, pi / 4, 1e-9);
    EXPECT_NEAR(ksf::beta_expansion_55(KScale(1), 0.9, 120).value, ksf::beta_k(KScale(1), 0.9), 1e-8);
    for (double k : {0.5, 1.0, 2.0}) {
        for (double t : {0.1, 0.5, 0.9}) {
            EXPECT_NEAR(ksf::beta_expansion_55(KScale(k), t * k, 80).value, ksf::beta_k(KScale(k), t * k), 1e-11);
        }
    }
    EXPECT_THROW(ksf::beta_expansion_55(KScale(1), 1.2, 80), ksf::DomainError);
    EXPECT_THROW(ksf::beta_expansion_55(KScale(1), 0.9, 3), ksf::ConvergenceError);
}

TEST(BetaExpansion55, RawRegion) {
    std::vector<double> xs{-2.5, -1.5, -0.5, 0.5, 0.9, 1.1, 2.0};
    auto samples = ksf::map_expansion_55_region(KScale(1), xs, 600);
    ASSERT_EQ(samples.size(), xs.size());
    EXPECT_FALSE(samples[0].converges);
    EXPECT_TRUE(samples[1].converges);
    EXPECT_TRUE(samples[2].converges);
    EXPECT_TRUE(samples[3].converges);
    EXPECT_TRUE(samples[4].converges);
    EXPECT_FALSE(samples[5].converges);
    EXPECT_FALSE(samples[6].converges);
    EXPECT_NEAR(samples[3].partial_sum, pi / 2, 1e-12);
}

TEST(Telescope51, Variants) {
    for (auto v : {ksf::TelescopeVariant::as_printed, ksf::TelescopeVariant::corrected}) {
        auto [lhs, rhs] = ksf::telescope_51(KScale(1), 1, 1, v);
        EXPECT_NEAR(lhs, 1 - ln2, 1e-12);
        EXPECT_NEAR(rhs, 1 - ln2, 1e-12);
    }
    auto [cl, cr] = ksf::telescope_51(KScale(2), 0.3, 2, ksf::TelescopeVariant::corrected);
    EXPECT_LT(std::fabs(cl - cr), 1e-10);
    auto [pl, pr] = ksf::telescope_51(KScale(2), 0.3, 2, ksf::TelescopeVariant::as_printed);
    EXPECT_GT(std::fabs(pl - pr), 0.01);
    EXPECT_THROW(ksf::telescope_51(KScale(1), 1, 21, ksf::TelescopeVariant::corrected), ksf::ParameterError);
}

TEST(Telescope51, CorrectedHoldsForAllK) {
    for (double k : k_grid) {
        for (double x : {0.1, 0.7, 2.5}) {
            for (int n : {1, 3, 8}) {
                auto [lhs, rhs] = ksf::telescope_51(KScale(k), x, n, ksf::TelescopeVariant::corrected);
                EXPECT_NEAR(lhs, rhs, 1e-11);
            }
        }
    }
}

TEST(Inequalities, RemarkBounds) {
    for (double k : k_grid) {
        for (double t : {0.05, 0.1, 0.35, 0.7, 0.95}) {
            const double x = t * k;
            auto b = ksf::remark_bounds(KScale(k), x);
            const double v = ksf::beta_k(KScale(k), x);
            EXPECT_LT(b.lower, v);
            EXPECT_LT(v, b.upper);
            EXPECT_LT(v, b.refined_upper);
        }
    }
}

TEST(Inequalities, Lemma26Positive) {
    for (double k : k_grid) {
        for (double x : x_grid) EXPECT_GT(ksf::lemma26_margin(KScale(k), x * k), 0.0);
    }
}

TEST(Inequalities, Lambda27Decreasing) {
    for (double k : k_grid) {
        double prev = ksf::lambda_27(KScale(k), 0.01 * k);
        for (double t = 0.05; t < 10.0; t += 0.05) {
            const double cur = ksf::lambda_27(KScale(k), t * k);
            EXPECT_LT(cur, prev) << k << " " << t;
            prev = cur;
        }
    }
}

TEST(Inequalities, XBetaIsCompletelyMonotoneOnSamples) {
    for (double k : k_grid) {
        auto v = ksf::cm_probe([k](double x) { return ksf::x_beta_k(KScale(k), x); }, 0.2 * k, 5 * k, 0.1 * k, 6);
        EXPECT_TRUE(v.pass) << k << " order " << v.order << " at " << v.x;
    }
}

TEST(Inequalities, HarmonicMean56) {
    for (double k : k_grid) {
        EXPECT_NEAR(ksf::harmonic_mean_56(KScale(k), k), ln2 / k, 1e-12);
        for (double x : x_grid) EXPECT_LE(ksf::harmonic_mean_56(KScale(k), x * k), ln2 / k + 1e-15);
    }
}

TEST(XBeta, DerivativeComponents) {
    EXPECT_NEAR(ksf::x_beta_k_derivative(KScale(1), 1, 1), ln2 - pi * pi / 12, 1e-14);
    auto f = [](double x) { return ksf::x_beta_k(KScale(1), x); };
    EXPECT_NEAR(ksf::x_beta_k_derivative(KScale(1), 1, 1.7), ksf::finite_diff(f, 1.7, 1), 1e-8);
    auto f1 = [](double x) { return ksf::x_beta_k_derivative(KScale(2), 2, x); };
    EXPECT_NEAR(ksf::x_beta_k_derivative(KScale(2), 3, 1.3), ksf::finite_diff(f1, 1.3, 1), 1e-6);
}

}  // namespace
