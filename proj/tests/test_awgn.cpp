#include <array>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "covert/awgn.hpp"

using namespace covert;
using namespace covert::awgn;

TEST(WillieBound, Examples) {
    EXPECT_NEAR(willie_error_lower_bound(100, 2, 4, 1), 0.5 - std::sqrt(12.5) * taylor_density_factor(1, 4, 2) / 32,
                1e-15);
    EXPECT_NEAR(willie_error_lower_bound(100, 2, 4, 1), 0.4574, 1e-4);
    EXPECT_NEAR(willie_error_lower_bound(100, 1e4, 4, 1), 0.5, 1e-15);
    EXPECT_EQ(willie_error_lower_bound(1e8, 0.1, 4, 1), 0.0);
    double prev = 0.0;
    for (double d = 0.5; d < 10; d += 0.25) {
        const double b = willie_error_lower_bound(500, d, 4, 1);
        EXPECT_GE(b, prev);
        EXPECT_LE(b, 0.5);
        prev = b;
    }
    EXPECT_THROW(willie_error_lower_bound(0.5, 1, 4, 1), ParameterError);
    EXPECT_THROW(willie_error_lower_bound(10, 0, 4, 1), ParameterError);
}

TEST(CovertDistance, Examples) {
    EXPECT_NEAR(covert_distance(100, 4, 1, 2, 0.05), 1.922, 1e-3);
    const double d = covert_distance(100, 4, 1, 2, 0.05);
    EXPECT_NEAR(covert_distance(100 * 256, 4, 1, 2, 0.05) / d, 2.0, 1e-12);
    EXPECT_NEAR(willie_error_lower_bound(100, d, 4, 1), 0.45, 1e-12);
    EXPECT_THROW(covert_distance(100, 4, 1, 2, 0), ParameterError);
}

TEST(CovertBits, Examples) {
    EXPECT_NEAR(covert_bits(1e6, 0.01, 0.01), std::log2(30 / (0.01 * std::pow(kPi, 3.5))), 1e-12);
    EXPECT_NEAR(covert_bits(1e6, 0.01, 0.01), 5.77, 0.01);
    for (double n : {1e4, 1e5, 1e6}) {
        EXPECT_NEAR(covert_bits(4 * n, 0.01, 0.01) - covert_bits(n, 0.01, 0.01), 1.0, 1e-12);
    }
    double prev = std::numeric_limits<double>::infinity();
    for (double lambda : {1e-4, 1e-3, 1e-2}) {
        const double b = covert_bits(1e6, lambda, 0.01);
        EXPECT_LT(b, prev);
        prev = b;
    }
    EXPECT_EQ(covert_bits(1, 10, 0.01), 0.0);
    EXPECT_THROW(covert_bits(1e6, 0.01, 0.01, 3.0), ParameterError);
    EXPECT_THROW(covert_bits(1e6, 0.0, 0.01), ParameterError);
}

TEST(CovertBits, BobBoundInverse) {
    // At the covert bit count the decoding bound sits exactly at epsilon.
    const double n = 1e6, lambda = 0.01, eps = 0.01;
    const double bits = covert_bits(n, lambda, eps);
    EXPECT_NEAR(bob_error_upper_bound(n, bits / n, lambda), eps, 1e-12);
    EXPECT_EQ(bob_error_upper_bound(n, 1.0, lambda), 1.0);
    EXPECT_EQ(bob_error_upper_bound(n, 0.1, 0.0), 0.0);
    EXPECT_THROW(bob_error_upper_bound(n, 0.1, 0.01, 3.0), ParameterError);
}

TEST(PowerCondition, Example) {
    EXPECT_NEAR(power_condition_threshold(1, 1), 9 / (4 * std::pow(kPi, 4)), 1e-15);
    EXPECT_NEAR(power_condition_threshold(1, 1), 0.0231, 1e-4);
}

TEST(Throughput, Examples) {
    ThroughputParams t;
    EXPECT_NEAR(spatial_throughput(ThroughputScheme::interference, t, 10), 0.1 * std::exp(-kPi * 0.1 * kPi / 2), 1e-12);
    EXPECT_NEAR(spatial_throughput(ThroughputScheme::interference, t, 10), 0.0610, 1e-4);
    EXPECT_EQ(spatial_throughput(ThroughputScheme::interference, t, 10),
              spatial_throughput(ThroughputScheme::interference, t, 1e6));
    double prev = spatial_throughput(ThroughputScheme::jammer, t, 0);
    EXPECT_EQ(prev, 0.1);
    for (double n = 1e-4; n < 40; n *= 2) {
        const double v = spatial_throughput(ThroughputScheme::jammer, t, n);
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_LT(spatial_throughput(ThroughputScheme::jammer, t, 1e4), 1e-300);
}

TEST(Throughput, Crossover) {
    ThroughputParams t;
    const double n = throughput_crossover(t);
    const double ti = spatial_throughput(ThroughputScheme::interference, t, 0);
    EXPECT_LE(spatial_throughput(ThroughputScheme::jammer, t, n), ti);
    EXPECT_LE(ti, spatial_throughput(ThroughputScheme::jammer, t, n / 2));
}

namespace {

AwgnScenario radiometer_scenario() {
    AwgnScenario s;
    s.law = PathLossLaw::bounded(4.0);
    s.arena = Region::square(100.0);
    s.refresh = FieldRefresh::per_sample;
    s.near_field_radius = 5.0;
    s.samples = 200;
    return s;
}

}  // namespace

TEST(Radiometer, SilentMeanMatchesNoisePlusInterference) {
    AwgnScenario s = radiometer_scenario();
    s.arena = Region::disk(20.0);
    const WillieInterference w(s);
    // Bounded law: mean interference is lambda (pi + 2 pi (1 - R^-2) / 2) for a disk of radius R.
    const double expected = 1.0 + kPi + kPi * (1.0 - 1.0 / (20.0 * 20.0));
    const auto t = radiometer_statistics(s, AliceMode::silent, 400, {11, 1, 0});
    const auto m = stats::moments(t);
    EXPECT_NEAR(m.mean, expected, 4 * m.std_error());
    EXPECT_GT(w.far_field_mean(), 0.0);
}

TEST(Radiometer, ModesShareRandomNumbers) {
    AwgnScenario s = radiometer_scenario();
    s.d_aw = 1.0;
    s.transmit_power = 3.0;
    RandomStream a(5), b(5), c(5);
    const WillieInterference w(s);
    const auto silent = simulate_radiometer(s, AliceMode::silent, a, w);
    const auto tx = simulate_radiometer(s, AliceMode::transmitting, b, w);
    const auto alt = simulate_radiometer(s, AliceMode::alternating, c, w);
    ASSERT_EQ(silent.energies.size(), s.samples);
    for (std::size_t i = 0; i < s.samples; ++i) {
        EXPECT_GE(tx.energies[i], silent.energies[i]);
        EXPECT_GE(alt.energies[i], silent.energies[i]);
        EXPECT_LE(alt.energies[i], tx.energies[i]);
    }
    EXPECT_GT(tx.statistic, silent.statistic);
}

TEST(Radiometer, SilentAliceIsUndetectable) {
    AwgnScenario s = radiometer_scenario();
    s.transmit_power = 0.0;
    s.interferer_power = 1.0;
    const auto o = willie_error_empirical(s, 400, ThresholdRule::best_on_grid(), {3, 1, 0});
    EXPECT_GT(o.error(), 0.4);
    EXPECT_LE(o.error(), 0.5);
}

TEST(Radiometer, StrongAliceIsDetected) {
    AwgnScenario s = radiometer_scenario();
    s.transmit_power = 1000.0;
    s.interferer_power = 1.0;
    s.d_aw = 1.0;
    const auto o = willie_error_empirical(s, 200, ThresholdRule::best_on_grid(), {3, 1, 0});
    EXPECT_LT(o.error(), 0.05);
}

TEST(Radiometer, ThresholdRules) {
    const std::vector<double> h0 = {1, 2, 3}, h1 = {4, 5, 6};
    const auto best = apply_threshold_rule(h0, h1, ThresholdRule::best_on_grid(64));
    EXPECT_EQ(best.error(), 0.0);
    const auto fixed = apply_threshold_rule(h0, h1, ThresholdRule::fixed(0.0));
    EXPECT_EQ(fixed.false_alarm, 1.0);
    EXPECT_EQ(fixed.missed_detection, 0.0);
    const std::vector<double> flat = {2, 2, 2};
    EXPECT_THROW(apply_threshold_rule(flat, flat, ThresholdRule::best_on_grid()), ThresholdError);
}

TEST(Radiometer, WorkerCountDoesNotChangeResults) {
    const AwgnScenario s = radiometer_scenario();
    const auto a = radiometer_statistics(s, AliceMode::alternating, 40, {9, 1, 0});
    const auto b = radiometer_statistics(s, AliceMode::alternating, 40, {9, 4, 0});
    EXPECT_EQ(a, b);
}

TEST(Dispersion, SweepLayoutAndScaling) {
    AwgnScenario s = radiometer_scenario();
    s.transmit_power = 10;
    const std::array<AliceMode, 2> modes = {AliceMode::silent, AliceMode::transmitting};
    const std::array<double, 2> distances = {0.5, 3.0};
    const std::array<std::uint32_t, 2> counts = {200, 1800};
    const auto cells = iqr_dispersion_sweep(s, modes, distances, counts, 40, {4, 1, 0}, StreamSharing::per_distance);
    ASSERT_EQ(cells.size(), 8u);
    EXPECT_EQ(cells[0].samples, 200u);
    EXPECT_EQ(cells[0].mode, AliceMode::silent);
    EXPECT_EQ(cells[1].mode, AliceMode::transmitting);
    EXPECT_EQ(cells[2].d_aw, 3.0);
    // Close to Alice she adds about P_t on average; far away the modes look alike.
    EXPECT_GT(cells[1].mean - cells[0].mean, 5.0);
    EXPECT_LT(cells[1].mean - cells[0].mean, 15.0);
    EXPECT_NEAR(cells[3].mean, cells[2].mean, 0.05 * cells[2].mean);
    // Nine times the samples, about a third of the spread.
    const double ratio = cells[6].iqr() / cells[2].iqr();
    EXPECT_GT(ratio, 1.0 / 3.0 * 0.5);
    EXPECT_LT(ratio, 1.0 / 3.0 * 1.7);
    EXPECT_THROW(iqr_dispersion_sweep(s, modes, distances, counts, 10, {}), ParameterError);
}

TEST(Scenario, Validation) {
    AwgnScenario s;
    EXPECT_NO_THROW(s.validate());
    s.transmit_prob = 1.5;
    EXPECT_THROW(s.validate(), ParameterError);
    s = AwgnScenario{};
    s.d_aw = 0;
    EXPECT_THROW(s.validate(), ParameterError);
    s = AwgnScenario{};
    s.near_field_radius = 80;
    EXPECT_THROW(WillieInterference{s}, ParameterError);
}
