#pragma once

// Exponential integral Ei(x) for negative arguments, Ei(x) = -E1(-x).

#include <cmath>
#include <limits>

#include "covert/error.hpp"

namespace covert {

namespace detail {

inline constexpr double kEulerGamma = 0.57721566490153286061;

// Crossover between the power series and the continued fraction for E1(z). Picked by
// comparing both branches against quadrature; above z ~ 1 the alternating series starts
// losing digits to cancellation while the continued fraction converges in < 60 terms.
inline constexpr double kE1SeriesLimit = 1.0;

inline double e1_series(double z) {
    double sum = -std::log(z) - kEulerGamma;
    double term = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= -z / k;
        const double add = -term / k;
        sum += add;
        if (std::abs(add) < std::abs(sum) * 1e-17) return sum;
    }
    throw NumericError("E1 power series did not converge");
}

// Modified Lentz evaluation of E1(z) = e^-z (1/(z+1-) 1/(z+3-) 4/(z+5-) ...).
inline double e1_continued_fraction(double z) {
    constexpr double tiny = 1e-300;
    double b = z + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) return h * std::exp(-z);
    }
    throw NumericError("E1 continued fraction did not converge");
}

}  // namespace detail

/// E1(z) = integral_z^inf e^-t / t dt for z > 0.
inline double exp_integral_e1(double z) {
    if (!(z > 0.0)) throw DomainError("exp_integral_e1: requires z > 0");
    if (std::isinf(z)) return 0.0;
    return z <= detail::kE1SeriesLimit ? detail::e1_series(z) : detail::e1_continued_fraction(z);
}

/// Ei(x) for x < 0. Non-negative arguments never arise in the interference integrals and are rejected.
inline double exp_integral_ei(double x) {
    if (!(x < 0.0)) throw DomainError("exp_integral_ei: only negative arguments are supported");
    const double v = -exp_integral_e1(-x);
    if (!std::isfinite(v)) throw NumericError("exp_integral_ei: non-finite result");
    return v;
}

}  // namespace covert
