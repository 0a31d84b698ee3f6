#pragma once

// Aggregate interference power (shot noise) of a PPP seen through a path-loss law:
// Monte Carlo realizations, Campbell moments, the Taylor estimate of E[1/I], and the
// Pareto-form CCDF bound that stochastically dominates it.

#include <cmath>
#include <cstdint>

#include "covert/error.hpp"
#include "covert/geometry.hpp"
#include "covert/rng.hpp"

namespace covert {

/// Unit-ball volume constant c_d for d = 1, 2, 3.
inline double ball_constant(int dimension) {
    switch (dimension) {
        case 1: return 2.0;
        case 2: return kPi;
        case 3: return 4.0 * kPi / 3.0;
        default: throw ParameterError("d", "spatial dimension must be 1, 2 or 3");
    }
}

struct ShotNoiseParams {
    double intensity = 1.0;  // lambda, per unit volume
    double alpha = 4.0;
    int dimension = 2;
    double guard = 1.0;  // rho
    double transmit_power = 1.0;

    double c_d() const { return ball_constant(dimension); }
};

// Unit-mean Rayleigh power fading.
inline constexpr double kFadingMean = 1.0;
inline constexpr double kFadingSecondMoment = 2.0;

inline double campbell_mean(const ShotNoiseParams& p) {
    const double d = p.dimension;
    detail::require(p.intensity >= 0.0, "lambda", "intensity must be >= 0");
    detail::require(p.guard > 0.0, "rho", "guard radius must be > 0 for finite moments");
    if (!(p.alpha > d)) throw DivergenceError("campbell_mean: requires alpha > d");
    return p.intensity * d * p.c_d() / (p.alpha - d) * kFadingMean * p.transmit_power *
           std::pow(p.guard, d - p.alpha);
}

inline double campbell_var(const ShotNoiseParams& p) {
    const double d = p.dimension;
    detail::require(p.intensity >= 0.0, "lambda", "intensity must be >= 0");
    detail::require(p.guard > 0.0, "rho", "guard radius must be > 0 for finite moments");
    if (!(2.0 * p.alpha > d)) throw DivergenceError("campbell_var: requires 2 alpha > d");
    return p.intensity * d * p.c_d() / (2.0 * p.alpha - d) * kFadingSecondMoment * p.transmit_power *
           p.transmit_power * std::pow(p.guard, d - 2.0 * p.alpha);
}

/// f(lambda) for rho = 1: (1/lambda) (alpha-d)/(d c_d) [1 + 2(alpha-d)^2 / ((2alpha-d) d c_d lambda)].
inline double taylor_density_factor(double intensity, double alpha, int dimension) {
    if (!(intensity > 0.0)) throw DivergenceError("f(lambda) diverges at lambda = 0");
    const double d = dimension;
    const double cd = ball_constant(dimension);
    if (!(alpha > d)) throw DivergenceError("f(lambda): requires alpha > d");
    const double lead = (alpha - d) / (d * cd) / intensity;
    const double correction = 2.0 * (alpha - d) * (alpha - d) / ((2.0 * alpha - d) * d * cd) / intensity;
    return lead * (1.0 + correction);
}

/// Second-order Taylor estimate of E[1/sigma_I^2] = f(lambda) / P_t (guard radius fixed at 1).
inline double reciprocal_mean_taylor(const ShotNoiseParams& p) {
    if (p.guard != 1.0) throw ParameterError("rho", "the Taylor reciprocal-mean form assumes rho = 1");
    detail::require(p.transmit_power > 0.0, "P_t", "transmit power must be > 0");
    return taylor_density_factor(p.intensity, p.alpha, p.dimension) / p.transmit_power;
}

enum class FadingSharing {
    per_link,  ///< fresh Psi per (transmitter, receiver) link
    shared,    ///< reuse the field's fading marks
};

/// sigma_I^2 = sum_k P_k l(|x_k - receiver|) Psi_k over one field.
inline double realize_interference_power(const PointField& field, const PathLossLaw& law, Point receiver,
                                         RandomStream& rng, FadingSharing sharing = FadingSharing::per_link,
                                         FadingMode fading = FadingMode::rayleigh) {
    double total = 0.0;
    for (std::size_t k = 0; k < field.size(); ++k) {
        const double psi = sharing == FadingSharing::shared ? field.fading[k] : sample_fading_power(rng, fading);
        total += field.power[k] * law.gain(distance(field.points[k], receiver)) * psi;
    }
    return total;
}

/// Interference at the centre of a disk arena, sampled from radii only (angles do not matter
/// to a receiver at the centre). Same distribution as sampling the full field.
struct CenteredShotNoise {
    PathLossLaw law;
    double intensity;
    double arena_radius;
    double transmit_power = 1.0;
    FadingMode fading = FadingMode::rayleigh;

    double operator()(RandomStream& rng) const {
        const std::uint64_t count = sample_poisson(intensity * kPi * arena_radius * arena_radius, rng);
        double total = 0.0;
        for (std::uint64_t k = 0; k < count; ++k) {
            const double r = arena_radius * std::sqrt(rng.uniform_open_closed());
            const double psi = sample_fading_power(rng, fading);
            total += law.gain(r) * psi;
        }
        return transmit_power * total;
    }
};

struct TailBoundParams {
    double delta;  // 2/alpha
    double kappa;
    double eta;
    double beta;   // P_t Psi_ab d_ab^-alpha

    /// Left end of the dominating density's support, (eta lambda)^(1/delta) beta.
    double support_floor(double intensity) const { return std::pow(eta * intensity, 1.0 / delta) * beta; }
};

inline TailBoundParams tail_bound_params(double intensity, double alpha, double transmit_power, double d_ab,
                                         double psi_ab = 1.0) {
    detail::require(intensity >= 0.0, "lambda", "intensity must be >= 0");
    detail::require(alpha > 2.0, "alpha", "tail bound requires alpha > 2");
    detail::require(d_ab > 0.0, "d_ab", "distance must be > 0");
    detail::require(transmit_power > 0.0 && psi_ab > 0.0, "P_t", "signal power must be > 0");
    const double delta = 2.0 / alpha;
    const double kappa = kPi * kPi * delta / std::sin(kPi * delta) * d_ab * d_ab;
    const double eta = 2.0 * kappa / (2.0 - delta);
    const double beta = transmit_power * psi_ab * std::pow(d_ab, -alpha);
    return {delta, kappa, eta, beta};
}

/// Leading-order CCDF bound min{1, eta lambda beta^delta x^-delta}; the O(x^-2delta) remainder is dropped.
inline double interference_ccdf_upper(double x, const TailBoundParams& t, double intensity) {
    const double floor = t.support_floor(intensity);
    if (!(x >= floor)) throw DomainError("interference_ccdf_upper: x below the support floor");
    if (x == 0.0) return 1.0;
    return std::min(1.0, t.eta * intensity * std::pow(t.beta, t.delta) * std::pow(x, -t.delta));
}

/// Inverse-CDF draw from the Pareto-form dominating density: x_min u^(-1/delta), u in (0, 1].
inline double dominating_tail_quantile(const TailBoundParams& t, double intensity, double u) {
    detail::require(u > 0.0 && u <= 1.0, "u", "must lie in (0, 1]");
    return t.support_floor(intensity) * std::pow(u, -1.0 / t.delta);
}

inline double sample_dominating_tail(const TailBoundParams& t, double intensity, RandomStream& rng) {
    return dominating_tail_quantile(t, intensity, rng.uniform_open_closed());
}

}  // namespace covert
