#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "covert/error.hpp"

namespace covert::stats {

struct Moments {
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double count = 0.0;

    double std_error() const { return count > 0 ? std::sqrt(variance / count) : 0.0; }
};

/// Welford accumulation in input order.
inline Moments moments(std::span<const double> xs) {
    Moments m;
    double m2 = 0.0;
    for (double x : xs) {
        m.count += 1.0;
        const double delta = x - m.mean;
        m.mean += delta / m.count;
        m2 += delta * (x - m.mean);
    }
    m.variance = m.count > 1 ? m2 / (m.count - 1.0) : 0.0;
    return m;
}

/// Sample quantile with linear interpolation between order statistics (Hyndman-Fan type 7).
inline double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) throw ParameterError("quantile", "empty sample");
    std::sort(xs.begin(), xs.end());
    const double h = (static_cast<double>(xs.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, xs.size() - 1);
    return xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

struct Quartiles {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;

    double iqr() const noexcept { return q3 - q1; }
};

inline Quartiles quartiles(std::span<const double> xs) {
    std::vector<double> v(xs.begin(), xs.end());
    return {quantile(v, 0.25), quantile(v, 0.5), quantile(v, 0.75)};
}

/// Fraction of `xs` strictly greater than `x`.
inline double empirical_ccdf(std::span<const double> sorted_xs, double x) {
    const auto it = std::upper_bound(sorted_xs.begin(), sorted_xs.end(), x);
    return static_cast<double>(sorted_xs.end() - it) / static_cast<double>(sorted_xs.size());
}

}  // namespace covert::stats
