#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "ksf/k_core.hpp"
#include "ksf/oracles.hpp"

namespace {

using ksf::KScale;
using ksf::constants::euler_gamma;
using ksf::constants::ln2;
using ksf::constants::pi;

const double k_grid[] = {0.5, 1.0, 2.0, pi};
const double x_grid[] = {0.1, 0.7, 1.0, 2.5, 8.0};

TEST(KScale, RejectsInvalid) {
    EXPECT_THROW(KScale(0.0), ksf::DomainError);
    EXPECT_THROW(KScale(-1.0), ksf::DomainError);
    EXPECT_THROW(KScale{std::numeric_limits<double>::infinity()}, ksf::DomainError);
    EXPECT_THROW(KScale{std::numeric_limits<double>::quiet_NaN()}, ksf::DomainError);
    EXPECT_EQ(KScale(2.5).value(), 2.5);
}

TEST(GammaK, Values) {
    for (double k : {0.5, 1.0, 2.0, 3.0}) EXPECT_NEAR(ksf::gamma_k(KScale(k), k), 1.0, 1e-15) << k;
    EXPECT_NEAR(ksf::gamma_k(KScale(1), 5), 24.0, 24e-15);
    EXPECT_NEAR(ksf::gamma_k(KScale(2), 1), 1.2533141373155002512, 1e-15);
    EXPECT_NEAR(ksf::gamma_k(KScale(3), -1), -0.93889294010174456634, 1e-14);
}

TEST(GammaK, Recurrence) {
    for (double k : k_grid) {
        for (double x : x_grid) {
            const double lhs = ksf::gamma_k(KScale(k), x + k);
            EXPECT_LT(std::fabs(lhs - x * ksf::gamma_k(KScale(k), x)) / std::fabs(lhs), 1e-12) << k << " " << x;
        }
    }
}

TEST(GammaK, NegativeArgumentsFollowRecurrence) {
    for (double k : k_grid) {
        for (double x : {-0.3, -1.7, -4.2}) {
            const double lhs = ksf::gamma_k(KScale(k), x + k);
            EXPECT_LT(std::fabs(lhs - x * ksf::gamma_k(KScale(k), x)) / std::fabs(lhs), 1e-12);
        }
    }
}

TEST(GammaK, PolesAndOverflow) {
    EXPECT_THROW(ksf::gamma_k(KScale(2), 0.0), ksf::PoleError);
    EXPECT_THROW(ksf::gamma_k(KScale(2), -4.0), ksf::PoleError);
    EXPECT_THROW(ksf::gamma_k(KScale(2), -4.0 + 1e-9), ksf::PoleError);
    EXPECT_NO_THROW(ksf::gamma_k(KScale(2), -4.0 + 1e-6));
    EXPECT_THROW(ksf::gamma_k(KScale(1), 500.0), ksf::RangeError);
}

TEST(GammaK, LogCompanion) {
    EXPECT_NEAR(ksf::ln_gamma_k(KScale(2), 7.3), std::log(ksf::gamma_k(KScale(2), 7.3)), 1e-14);
    EXPECT_NEAR(ksf::ln_gamma_k(KScale(1), 500.0), ksf::ln_gamma(500.0), 1e-12);
    EXPECT_THROW(ksf::ln_gamma_k(KScale(1), -1.0), ksf::DomainError);
}

TEST(RgammaK, ZerosAndReciprocal) {
    EXPECT_EQ(ksf::rgamma_k(KScale(2), -6.0), 0.0);
    EXPECT_EQ(ksf::rgamma_k(KScale(0.5), 0.0), 0.0);
    for (double x : {-2.3, 0.4, 3.1}) {
        EXPECT_NEAR(ksf::rgamma_k(KScale(1.5), x) * ksf::gamma_k(KScale(1.5), x), 1.0, 1e-13);
    }
}

TEST(PsiK, Values) {
    EXPECT_NEAR(ksf::psi_k(KScale(1), 1), -euler_gamma, 1e-15);
    EXPECT_NEAR(ksf::psi_k(KScale(2), 2), (ln2 - euler_gamma) / 2, 1e-15);
    EXPECT_NEAR(ksf::psi_k(KScale(2), 2), 0.057965757829206224405, 1e-15);
    EXPECT_NEAR(ksf::psi_k(KScale(2), 4), 0.557965757829206224405, 1e-14);
    EXPECT_NEAR(ksf::psi_k(KScale(0.5), 3), 2.0259409757437103266, 1e-13);
    EXPECT_THROW(ksf::psi_k(KScale(1), 0.0), ksf::DomainError);
}

TEST(PsiK, Recurrence) {
    for (double k : k_grid) {
        for (double x : x_grid) {
            EXPECT_NEAR(ksf::psi_k(KScale(k), x + k) - ksf::psi_k(KScale(k), x), 1.0 / x, 1e-11);
        }
    }
}

TEST(PsiK, IsDerivativeOfLnGammaK) {
    for (double k : k_grid) {
        for (double x : {0.7, 2.5}) {
            const double fd = ksf::finite_diff([k](double t) { return ksf::ln_gamma_k(KScale(k), t); }, x, 1);
            EXPECT_NEAR(ksf::psi_k(KScale(k), x), fd, 1e-6);
        }
    }
}

TEST(PsiKSeries, MatchesReduction) {
    auto s = ksf::psi_k_series(KScale(1), 1, 1e-10);
    EXPECT_TRUE(s.converged);
    EXPECT_LE(s.error_estimate, 1e-10);
    EXPECT_NEAR(s.value, -euler_gamma, 1e-10);
    EXPECT_NEAR(ksf::psi_k_series(KScale(2), 2, 1e-10).value, 0.057965757829206224405, 1e-10);
    for (double k : k_grid) {
        for (double x : x_grid) {
            auto r = ksf::psi_k_series(KScale(k), x, 1e-10);
            EXPECT_NEAR(r.value, ksf::psi_k(KScale(k), x), r.error_estimate + 1e-12) << k << " " << x;
        }
    }
}

TEST(PsiKSeries, CapThrows) {
    EXPECT_THROW(ksf::psi_k_series(KScale(1), 1, 1e-14, 1000), ksf::ConvergenceError);
}

TEST(PsiKM, Values) {
    EXPECT_NEAR(ksf::psi_k_m(KScale(1), 1, 1), pi * pi / 6, 1e-14);
    EXPECT_NEAR(ksf::psi_k_m(KScale(2), 1, 2), 0.41123351671205660912, 1e-14);
    EXPECT_NEAR(ksf::psi_k_m(KScale(2), 2, 2), -0.30051422578989857135, 1e-14);
    EXPECT_THROW(ksf::psi_k_m(KScale(2), 0, 2), ksf::DomainError);
    EXPECT_THROW(ksf::psi_k_m(KScale(2), 1, -2), ksf::DomainError);
}

TEST(PsiKM, SeriesRouteAgrees) {
    for (double k : {0.5, 1.0, 2.0}) {
        for (int m = 1; m <= 4; ++m) {
            for (double x : {0.3, 1.0, 4.0}) {
                auto s = ksf::psi_k_m_series(KScale(k), m, x, 1e-9);
                const double ref = ksf::psi_k_m(KScale(k), m, x);
                EXPECT_NEAR(s.value, ref, 1e-9 + 1e-13 * std::fabs(ref)) << k << " " << m << " " << x;
            }
        }
    }
}

TEST(PsiKM, IsDerivativeOfPsiK) {
    for (double k : {0.5, 2.0}) {
        const double fd = ksf::finite_diff([k](double t) { return ksf::psi_k(KScale(k), t); }, 1.3, 1);
        EXPECT_NEAR(ksf::psi_k_m(KScale(k), 1, 1.3), fd, 1e-6);
    }
}

TEST(Duplication, Values) {
    EXPECT_NEAR(ksf::psi_k_duplication_rhs(KScale(1), 1), 2 - euler_gamma - 2 * ln2, 1e-14);
    EXPECT_NEAR(ksf::psi_k_duplication_rhs(KScale(2), 1), ksf::psi_k(KScale(2), 3), 1e-12);
    for (double k : k_grid) {
        for (double x : {0.1, 0.35, 1.0, 2.5}) {
            EXPECT_NEAR(ksf::psi_k_duplication_rhs(KScale(k), x), ksf::psi_k(KScale(k), k * x + k / 2), 1e-12);
        }
    }
    EXPECT_NEAR(ksf::psi_k_duplication_rhs(KScale(0.5), 2), ksf::psi_k(KScale(0.5), 1.25), 1e-12);
    EXPECT_NEAR(ksf::psi_k(KScale(2), 5), 0.69815191060259424832, 1e-14);
    EXPECT_NEAR(ksf::psi_k(KScale(0.5), 1.25), 0.020018920170595755617, 1e-13);
}

TEST(ReflectionProduct, ConstantInX) {
    for (double k : k_grid) {
        const KScale kk(k);
        auto product = [&](double x) {
            return ksf::gamma_k(kk, x) * ksf::gamma_k(kk, k - x) * std::sin(pi * x / k);
        };
        const double c = product(0.3 * k);
        for (double t : {0.1, 0.45, 0.8, 1.7, -0.6}) EXPECT_NEAR(product(t * k), c, 1e-12 * c);
        EXPECT_NEAR(c, pi / k, 1e-12);
    }
}

}  // namespace
