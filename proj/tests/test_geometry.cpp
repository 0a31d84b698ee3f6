#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "covert/geometry.hpp"
#include "covert/rng.hpp"
#include "oracles.hpp"

using namespace covert;

TEST(Region, AreaAndContainment) {
    EXPECT_DOUBLE_EQ(Region::square(100).area(), 1e4);
    EXPECT_NEAR(Region::disk(10).area(), 100 * kPi, 1e-12);
    EXPECT_THROW(Region::disk(0), ParameterError);
    EXPECT_THROW(Region::square(-1), ParameterError);

    RandomStream rng(3);
    const Region disk = Region::disk(2.0, {5, -1});
    const Region sq = Region::square(3.0, {1, 1});
    for (int i = 0; i < 10000; ++i) {
        EXPECT_TRUE(disk.contains(disk.sample_uniform(rng)));
        EXPECT_TRUE(sq.contains(sq.sample_uniform(rng)));
    }
}

TEST(SamplePpp, ZeroIntensityIsEmpty) {
    RandomStream rng(1);
    EXPECT_TRUE(sample_ppp(Region::square(100), 0.0, rng).empty());
    EXPECT_THROW(sample_ppp(Region::square(10), -1.0, rng), ParameterError);
}

TEST(SamplePpp, MeanCountSquare) {
    // lambda = 1 on a 100 x 100 square: mean 10^4 points.
    const Region region = Region::square(100);
    double total = 0.0;
    constexpr int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        RandomStream rng = derive_stream(11, t);
        std::uint64_t count = 0;
        for_each_ppp_point(region, 1.0, rng, [&](Point) { ++count; });
        total += static_cast<double>(count);
    }
    EXPECT_NEAR(total / trials, 1e4, 100.0);
}

TEST(SamplePpp, MeanCountDisk) {
    const Region region = Region::disk(10);
    std::vector<double> counts;
    for (int t = 0; t < 100000; ++t) {
        RandomStream rng = derive_stream(12, t);
        counts.push_back(static_cast<double>(sample_ppp(region, 0.01, rng).size()));
    }
    const double se = std::sqrt(kPi / counts.size());
    EXPECT_NEAR(oracle::mean(counts), kPi, 3 * se);
}

TEST(SamplePpp, MarksAndBounds) {
    RandomStream rng(5);
    const Region region = Region::disk(3);
    const auto field = sample_ppp(region, 2.0, rng, {FadingMode::constant, 2.5});
    ASSERT_EQ(field.fading.size(), field.size());
    ASSERT_EQ(field.power.size(), field.size());
    for (std::size_t i = 0; i < field.size(); ++i) {
        EXPECT_TRUE(region.contains(field.points[i]));
        EXPECT_EQ(field.fading[i], 1.0);
        EXPECT_EQ(field.power[i], 2.5);
    }
}

TEST(SamplePpp, CountMatchesIntensityOverGrid) {
    for (double lambda : {0.05, 0.5}) {
        for (const Region& region : {Region::disk(5), Region::square(7)}) {
            std::vector<double> counts;
            for (int t = 0; t < 4000; ++t) {
                RandomStream rng = derive_stream(99, t);
                counts.push_back(static_cast<double>(sample_ppp(region, lambda, rng).size()));
            }
            const double expected = lambda * region.area();
            EXPECT_NEAR(oracle::mean(counts), expected, 3 * std::sqrt(expected / counts.size()));
        }
    }
}

TEST(PathGain, Examples) {
    EXPECT_EQ(PathLossLaw::bounded(4).gain(0.5), 1.0);
    EXPECT_EQ(PathLossLaw::truncated(4, 1).gain(0.5), 0.0);
    EXPECT_DOUBLE_EQ(PathLossLaw::unbounded(4).gain(2.0), 0.0625);
    EXPECT_THROW(PathLossLaw::unbounded(4).gain(0.0), SingularityError);
    EXPECT_THROW(PathLossLaw::bounded(4).gain(-1.0), DomainError);
    EXPECT_THROW(PathLossLaw::bounded(1.5), ParameterError);
    EXPECT_THROW(PathLossLaw::truncated(4, -1), ParameterError);
}

TEST(PathGain, MonotoneAndConsistent) {
    const PathLossLaw laws[] = {PathLossLaw::unbounded(3), PathLossLaw::bounded(4), PathLossLaw::bounded(2)};
    for (const auto& law : laws) {
        double prev = std::numeric_limits<double>::infinity();
        for (double r = 0.01; r < 20; r *= 1.07) {
            const double g = law.gain(r);
            EXPECT_LE(g, prev);
            prev = g;
            if (law.kind() == PathLossLaw::Kind::bounded) {
                EXPECT_LE(g, 1.0);
            }
        }
    }
    const auto trunc = PathLossLaw::truncated(4, 1.5);
    const auto unb = PathLossLaw::unbounded(4);
    for (double r = 1.5; r < 10; r += 0.25) EXPECT_EQ(trunc.gain(r), unb.gain(r));
    for (double r = 0.1; r < 1.5; r += 0.1) EXPECT_EQ(trunc.gain(r), 0.0);
}

TEST(Fading, Moments) {
    RandomStream rng = derive_stream(21, 0);
    constexpr int n = 1000000;
    double m1 = 0, m2 = 0, mh = 0;
    for (int i = 0; i < n; ++i) {
        const double psi = sample_fading_power(rng);
        m1 += psi;
        m2 += psi * psi;
        mh += std::sqrt(psi);
    }
    EXPECT_NEAR(m1 / n, 1.0, 0.005);
    EXPECT_NEAR(m2 / n, 2.0, 0.02);
    EXPECT_NEAR(mh / n, std::sqrt(kPi) / 2, 0.01 * std::sqrt(kPi) / 2);
    EXPECT_EQ(sample_fading_power(rng, FadingMode::constant), 1.0);
}

TEST(NearestInterferer, Examples) {
    EXPECT_NEAR(nearest_interferer_cdf(1, 1), 0.9568, 5e-5);
    EXPECT_EQ(nearest_interferer_cdf(1, 0), 0.0);
    EXPECT_NEAR(nearest_interferer_cdf(0.1, 2), 1 - std::exp(-0.4 * kPi), 1e-15);
    EXPECT_NEAR(nearest_interferer_cdf(0.1, 2), 0.7154, 5e-5);
    EXPECT_THROW(nearest_interferer_cdf(-1, 1), ParameterError);
    EXPECT_THROW(nearest_interferer_cdf(1, -1), ParameterError);
}

TEST(NearestInterferer, MonotoneInBothArguments) {
    for (double l = 0.0; l < 3; l += 0.3) {
        for (double d = 0.0; d < 3; d += 0.3) {
            const double v = nearest_interferer_cdf(l, d);
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
            EXPECT_LE(v, nearest_interferer_cdf(l + 0.1, d));
            EXPECT_LE(v, nearest_interferer_cdf(l, d + 0.1));
        }
    }
}

namespace {

std::vector<double> nearest_distances(double lambda, double radius, int trials, std::uint64_t seed) {
    std::vector<double> out;
    const Region region = Region::disk(radius);
    for (int t = 0; t < trials; ++t) {
        RandomStream rng = derive_stream(seed, t);
        double best = std::numeric_limits<double>::infinity();
        for_each_ppp_point(region, lambda, rng, [&](Point p) { best = std::min(best, distance(p, {})); });
        out.push_back(best);
    }
    return out;
}

}  // namespace

TEST(NearestInterferer, KolmogorovSmirnovAgainstSampledFields) {
    // A disk of radius 6 holds the nearest point with probability 1 - e^{-36 pi}.
    const auto d = nearest_distances(1.0, 6.0, 10000, 31);
    EXPECT_LT(oracle::ks_statistic(d, [](double r) { return nearest_interferer_cdf(1.0, r); }), 0.02);
}

TEST(NearestInterferer, EmpiricalFrequencyAtLowDensity) {
    const auto d = nearest_distances(0.1, 15.0, 100000, 32);
    const double freq = static_cast<double>(std::count_if(d.begin(), d.end(), [](double r) { return r < 2.0; })) / d.size();
    const double p = nearest_interferer_cdf(0.1, 2.0);
    EXPECT_NEAR(freq, p, 3 * std::sqrt(p * (1 - p) / d.size()));
}

TEST(DeriveStream, Reproducible) {
    RandomStream a = derive_stream(1, 0), b = derive_stream(1, 0);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(DeriveStream, DistinctSeedsDiffer) {
    RandomStream a = derive_stream(1, 0), b = derive_stream(2, 0);
    int same = 0;
    for (int i = 0; i < 1000; ++i) same += a() == b();
    EXPECT_LT(same, 2);
}

TEST(DeriveStream, NeighbouringStreamsUncorrelated) {
    RandomStream a = derive_stream(1, 0), b = derive_stream(1, 1);
    std::vector<double> x, y;
    for (int i = 0; i < 1000; ++i) {
        x.push_back(a.uniform());
        y.push_back(b.uniform());
    }
    const double mx = oracle::mean(x), my = oracle::mean(y);
    double sxy = 0, sxx = 0, syy = 0;
    for (int i = 0; i < 1000; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    EXPECT_LT(std::abs(sxy / std::sqrt(sxx * syy)), 0.05);
}
