#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "covert/parallel.hpp"
#include "covert/stats.hpp"
#include "covert/thz.hpp"
#include "oracles.hpp"

using namespace covert;
using namespace covert::thz;

TEST(AntennaGain, Examples) {
    EXPECT_NEAR(antenna_gain(2 * kPi), 1.0, 1e-15);
    EXPECT_NEAR(antenna_gain(kPi / 18), 2 / (1 - std::cos(kPi / 36)), 1e-9);
    EXPECT_NEAR(antenna_gain(kPi / 18), 525.6, 0.05);
    EXPECT_NEAR(antenna_gain(kPi), 2.0, 1e-14);
    EXPECT_THROW(antenna_gain(0.0), SingularityError);
    EXPECT_THROW(antenna_gain(-1.0), ParameterError);
    EXPECT_THROW(antenna_gain(7.0), ParameterError);
    double prev = std::numeric_limits<double>::infinity();
    for (double phi = 0.01; phi <= 2 * kPi; phi += 0.05) {
        EXPECT_LT(antenna_gain(phi), prev);
        prev = antenna_gain(phi);
    }
}

TEST(ReceivedPower, Examples) {
    EXPECT_NEAR(received_power(1, 5, 0.01), 0.04 * std::exp(-0.05), 1e-17);
    EXPECT_NEAR(received_power(1, 5, 0.01), 0.038049, 5e-7);
    EXPECT_DOUBLE_EQ(received_power(3, 2, 0), 0.75);
    const double g = antenna_gain(kPi / 18);
    EXPECT_NEAR(received_power(link_coefficient(1, g, g), 5, 0.01), received_power(1, 5, 0.01) * g * g, 1e-9);
    EXPECT_EQ(link_coefficient(2, 3, 5), link_coefficient(2, 5, 3));
    EXPECT_THROW(received_power(1, 0, 0.01), SingularityError);
    EXPECT_THROW(received_power(1, -1, 0.01), ParameterError);
}

TEST(JohnsonNyquist, Examples) {
    EXPECT_NEAR(johnson_nyquist_psd(500e9, 296), 3.92e-21, 0.005e-21);
    EXPECT_NEAR(johnson_nyquist_psd(1.0, 296), kBoltzmann * 296, 1e-9 * kBoltzmann * 296);
    EXPECT_NEAR(kBoltzmann * 296, 4.0867e-21, 1e-25);
    double prev = johnson_nyquist_psd(1e9, 296);
    for (double f = 2e9; f < 1e15; f *= 2) {
        const double v = johnson_nyquist_psd(f, 296);
        EXPECT_LT(v, prev);
        EXPECT_GE(v, 0.0);
        prev = v;
    }
    EXPECT_THROW(johnson_nyquist_psd(0, 296), ParameterError);
    EXPECT_THROW(johnson_nyquist_psd(1e9, 0), ParameterError);
}

TEST(Thinning, Examples) {
    EXPECT_EQ(blocking_prob(0.1, 1, 0.1), 0.0);
    EXPECT_NEAR(blocking_prob(1.1, 1, 0.1), 1 - std::exp(-0.1), 1e-15);
    EXPECT_NEAR(blocking_prob(1.1, 1, 0.1), 0.09516, 5e-6);
    EXPECT_THROW(blocking_prob(0.05, 1, 0.1), DomainError);
    EXPECT_NEAR(coverage_prob(kPi / 18), 1.0 / 36, 1e-15);
    EXPECT_NEAR(coverage_prob(2 * kPi), 1.0, 1e-15);
}

TEST(RealizeThz, SimpleFields) {
    InterferenceGeometry g;
    g.coefficient = 1.0;
    g.coverage_angle = 2 * kPi;
    g.intensity = 0.0;  // no blockers
    g.absorption = 0.01;
    RandomStream rng(1);
    EXPECT_EQ(realize_thz_interference(PointField{}, g, {}, rng), 0.0);

    PointField one;
    one.points = {{2.0, 0.0}};
    one.fading = {1.0};
    one.power = {1.0};
    EXPECT_NEAR(realize_thz_interference(one, g, {}, rng), 0.25 * std::exp(-0.02), 1e-15);
    EXPECT_NEAR(realize_thz_interference(one, g, {}, rng), 0.24505, 5e-6);

    PointField far;
    far.points = {{20.0, 0.0}};
    EXPECT_EQ(realize_thz_interference(far, g, {}, rng), 0.0);

    PointField inside;
    inside.points = {{0.05, 0.0}};
    EXPECT_THROW(realize_thz_interference(inside, g, {}, rng), DomainError);
}

namespace {

InterferenceGeometry unit_geometry(double lambda, double phi) {
    ThzScenario s;
    s.intensity = lambda;
    s.directivity = phi;
    s.blocker_radius = 0.1;
    s.horizon = 10;
    s.absorption = 0.01;
    InterferenceGeometry g = InterferenceGeometry::for_receiver(s, phi);
    g.coefficient = 1.0;
    return g;
}

}  // namespace

TEST(ThzStats, ClosedFormMatchesQuadrature) {
    for (double lambda : {0.001, 0.01, 0.1, 1.0}) {
        for (double phi : {kPi / 18, kPi / 2, 2 * kPi}) {
            const auto g = unit_geometry(lambda, phi);
            const auto ref = oracle::thz_moments(1, lambda, phi, 0.1, 10, 0.01);
            const auto c = thz_interference_stats(g, VarianceForm::campbell);
            EXPECT_NEAR(c.mean, ref.mean, 1e-9 * ref.mean);
            EXPECT_NEAR(c.variance, ref.variance, 1e-9 * ref.variance);
        }
    }
}

TEST(ThzStats, SquaredThinningFormMatchesItsIntegral) {
    const double lambda = 0.1, phi = kPi / 18, rb = 0.1, R = 10, K = 0.01;
    const double ref = lambda * oracle::integrate(
                                    [&](double r) {
                                        const double h = std::exp(-K * r) / (r * r);
                                        const double p = phi / (2 * kPi) * std::exp(-lambda * (r - rb) * rb);
                                        return 2 * kPi * r * h * h * p * p;
                                    },
                                    rb, R);
    const auto s = thz_interference_stats(unit_geometry(lambda, phi), VarianceForm::squared_thinning);
    EXPECT_NEAR(s.variance, ref, 1e-9 * ref);
    EXPECT_LT(s.variance, thz_interference_stats(unit_geometry(lambda, phi)).variance);
}

TEST(ThzStats, Limits) {
    auto g = unit_geometry(0.1, kPi / 18);
    g.horizon = 0.1 + 1e-9;
    const auto tiny = thz_interference_stats(g);
    EXPECT_NEAR(tiny.mean, 0.0, 1e-6);
    EXPECT_NEAR(tiny.variance, 0.0, 1e-4);

    const auto zero = thz_interference_stats(unit_geometry(0.0, kPi / 18));
    EXPECT_EQ(zero.mean, 0.0);
    EXPECT_EQ(zero.variance, 0.0);

    const double m1 = thz_interference_stats(unit_geometry(1e-6, kPi / 18)).mean;
    const double m2 = thz_interference_stats(unit_geometry(2e-6, kPi / 18)).mean;
    EXPECT_NEAR(m2 / m1, 2.0, 1e-4);

    auto bad = unit_geometry(0.1, kPi / 18);
    bad.horizon = 0.05;
    EXPECT_THROW(thz_interference_stats(bad), ParameterError);
}

TEST(ThzStats, MeanIncreasingInDensityOnFigureRange) {
    double prev = 0.0;
    for (double lambda = 0.005; lambda <= 0.2 + 1e-12; lambda += 0.005) {
        const double m = thz_interference_stats(unit_geometry(lambda, kPi / 18)).mean;
        EXPECT_GT(m, prev) << "lambda " << lambda;
        prev = m;
    }
}

TEST(ThzStats, MonteCarloGrid) {
    int index = 0;
    for (double lambda : {0.01, 0.05, 0.1}) {
        for (double phi : {kPi / 18, kPi / 6, kPi / 2}) {
            const auto g = unit_geometry(lambda, phi);
            const auto closed = thz_interference_stats(g);
            const int trials = 20000;
            const auto draws = parallel_trials(trials, 1, [&](std::size_t i) {
                RandomStream rng = derive_stream(500 + index, i);
                return sample_thz_interference(g, rng);
            });
            ++index;
            const auto m = stats::moments(draws);
            EXPECT_NEAR(m.mean, closed.mean, 3.5 * m.std_error()) << lambda << " " << phi;
            double m4 = 0;
            for (double x : draws) m4 += std::pow(x - m.mean, 4);
            m4 /= trials;
            EXPECT_NEAR(m.variance, closed.variance, 3.5 * std::sqrt((m4 - m.variance * m.variance) / trials))
                << lambda << " " << phi;
        }
    }
}

TEST(ThzStats, FieldPathAgreesWithDirectSampler) {
    const auto g = unit_geometry(0.1, kPi / 6);
    const int trials = 20000;
    const auto field_draws = parallel_trials(trials, 1, [&](std::size_t i) {
        RandomStream rng = derive_stream(600, i);
        const PointField f = sample_interferer_field(g, rng);
        return realize_thz_interference(f, g, {}, rng);
    });
    const auto m = stats::moments(field_draws);
    EXPECT_NEAR(m.mean, thz_interference_stats(g).mean, 3.5 * m.std_error());
}

TEST(ThzScenario, Validation) {
    ThzScenario s;
    EXPECT_NO_THROW(s.validate());
    s.horizon = 0.05;
    EXPECT_THROW(s.validate(), ParameterError);
    s = ThzScenario{};
    s.directivity = 0;
    EXPECT_THROW(s.validate(), ParameterError);
    s = ThzScenario{};
    s.absorption = -1;
    EXPECT_THROW(s.validate(), ParameterError);
}
