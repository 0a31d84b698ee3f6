#include <cmath>

#include <gtest/gtest.h>

#include "covert/expint.hpp"
#include "oracles.hpp"

using namespace covert;

TEST(ExpIntegral, KnownValue) {
    EXPECT_NEAR(exp_integral_ei(-1.0), -0.21938393439552027368, 1e-15);
    EXPECT_NEAR(exp_integral_ei(-1.0), oracle::ei_negative(-1.0), 1e-14);
}

TEST(ExpIntegral, MatchesQuadratureOnLogGrid) {
    for (int i = 0; i < 100; ++i) {
        const double z = 1e-6 * std::pow(700.0 / 1e-6, i / 99.0);
        const double ref = oracle::ei_negative(-z);
        EXPECT_NEAR(exp_integral_ei(-z), ref, 1e-10 * std::abs(ref)) << "x = " << -z;
    }
}

TEST(ExpIntegral, BothBranchesAgreeAcrossCrossover) {
    for (double z : {0.5, 0.9, 1.0, 1.1, 2.0, 4.0, 6.0}) {
        const double s = detail::e1_series(z);
        const double c = detail::e1_continued_fraction(z);
        EXPECT_NEAR(s, c, 1e-10 * c) << "z = " << z;
    }
}

TEST(ExpIntegral, DerivativeByFiniteDifferences) {
    for (double x : {-0.5, -2.0, -10.0}) {
        const double h = 1e-5 * std::abs(x);
        const double fd = (exp_integral_ei(x + h) - exp_integral_ei(x - h)) / (2 * h);
        const double exact = std::exp(x) / x;
        EXPECT_NEAR(fd, exact, 1e-6 * std::abs(exact)) << "x = " << x;
    }
}

TEST(ExpIntegral, DecaysToZeroFromBelow) {
    double prev = exp_integral_ei(-1.0);
    for (double x = -2.0; x > -800.0; x *= 1.5) {
        const double v = exp_integral_ei(x);
        EXPECT_LE(v, 0.0);
        EXPECT_GE(v, prev);
        prev = v;
    }
    EXPECT_EQ(exp_integral_ei(-1e6), 0.0);
    EXPECT_EQ(exp_integral_e1(std::numeric_limits<double>::infinity()), 0.0);
}

TEST(ExpIntegral, RejectsNonNegativeArguments) {
    EXPECT_THROW(exp_integral_ei(0.0), DomainError);
    EXPECT_THROW(exp_integral_ei(1.0), DomainError);
    EXPECT_THROW(exp_integral_ei(std::nan("")), DomainError);
    EXPECT_THROW(exp_integral_e1(-1.0), DomainError);
}
