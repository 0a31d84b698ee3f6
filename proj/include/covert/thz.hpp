#pragma once

// THz-band link and interference physics: cone-antenna gain, spreading plus absorption loss,
// Johnson-Nyquist noise, blocking/coverage thinning, and the aggregate-interference moments.

#include <cmath>
#include <cstdint>

#include "covert/error.hpp"
#include "covert/expint.hpp"
#include "covert/geometry.hpp"
#include "covert/rng.hpp"

namespace covert::thz {

inline constexpr double kPlanck = 6.62607015e-34;     // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J / K

struct ThzScenario {
    double frequency = 500e9;          // Hz
    double directivity = kPi / 18.0;   // phi, rad
    double blocker_radius = 0.1;       // r_B, m
    double horizon = 10.0;             // R, m
    double absorption = 0.01;          // K, 1/m
    double intensity = 0.01;           // lambda, 1/m^2
    double link_constant = 1.0;        // H, W m^2
    double temperature = 296.0;        // K
    double noise_bandwidth = 1.0;      // Hz; thermal noise power = PSD * bandwidth
    double d_ab = 5.0;                 // NLOS path length Alice -> Bob, m
    double d_aw = 5.0;                 // scattering path length Alice -> Willie, m

    void validate() const {
        detail::require(frequency > 0.0 && std::isfinite(frequency), "f", "frequency must be > 0");
        detail::require(directivity > 0.0 && directivity <= 2.0 * kPi, "phi", "directivity must lie in (0, 2pi]");
        detail::require(blocker_radius > 0.0, "r_B", "blocker radius must be > 0");
        detail::require(horizon > blocker_radius, "R", "horizon must exceed the blocker radius");
        detail::require(absorption >= 0.0, "K", "absorption must be >= 0");
        detail::require(intensity >= 0.0 && std::isfinite(intensity), "lambda", "intensity must be >= 0");
        detail::require(link_constant > 0.0, "H", "link constant must be > 0");
        detail::require(temperature > 0.0, "T", "temperature must be > 0");
        detail::require(noise_bandwidth > 0.0, "bandwidth", "noise bandwidth must be > 0");
        detail::require(d_ab > 0.0, "d_ab", "path length must be > 0");
        detail::require(d_aw > 0.0, "d_aw", "path length must be > 0");
    }
};

/// Main-lobe gain of a cone antenna, G = 2 / (1 - cos(phi/2)).
inline double antenna_gain(double directivity) {
    if (directivity == 0.0) throw SingularityError("antenna_gain: zero directivity angle");
    detail::require(directivity > 0.0 && directivity <= 2.0 * kPi, "phi", "directivity must lie in (0, 2pi]");
    // 1 - cos(x) = 2 sin^2(x/2) avoids cancellation for narrow beams.
    const double s = std::sin(directivity / 4.0);
    return 1.0 / (s * s);
}

/// A = H G_Tx G_Rx.
inline double link_coefficient(double link_constant, double gain_tx, double gain_rx) {
    return link_constant * gain_tx * gain_rx;
}

inline double received_power(double coefficient, double d, double absorption) {
    if (d == 0.0) throw SingularityError("received_power: zero path length");
    detail::require(d > 0.0, "d", "path length must be > 0");
    return coefficient / (d * d) * std::exp(-absorption * d);
}

/// S_JN(f) = h f / (exp(h f / k_B T) - 1), W/Hz.
inline double johnson_nyquist_psd(double frequency, double temperature) {
    detail::require(frequency > 0.0, "f", "frequency must be > 0");
    detail::require(temperature > 0.0, "T", "temperature must be > 0");
    const double hf = kPlanck * frequency;
    return hf / std::expm1(hf / (kBoltzmann * temperature));
}

inline double blocking_prob(double x, double intensity, double blocker_radius) {
    if (!(x >= blocker_radius)) throw DomainError("blocking_prob: distance inside the blocker radius");
    return -std::expm1(-intensity * (x - blocker_radius) * blocker_radius);
}

inline double coverage_prob(double directivity) {
    detail::require(directivity > 0.0 && directivity <= 2.0 * kPi, "phi", "directivity must lie in (0, 2pi]");
    return directivity / (2.0 * kPi);
}

/// What one receiver sees of the interferer field: the interferers' link coefficient A, the
/// receiver's coverage angle, and the blocking geometry.
struct InterferenceGeometry {
    double coefficient = 1.0;        // A for interferer -> receiver links
    double coverage_angle = kPi / 18.0;
    double intensity = 0.01;
    double blocker_radius = 0.1;
    double horizon = 10.0;
    double absorption = 0.01;

    static InterferenceGeometry for_receiver(const ThzScenario& s, double receiver_directivity) {
        s.validate();
        const double g_tx = antenna_gain(s.directivity);
        const double g_rx = antenna_gain(receiver_directivity);
        return {link_coefficient(s.link_constant, g_tx, g_rx), receiver_directivity, s.intensity,
                s.blocker_radius, s.horizon, s.absorption};
    }

    /// P{interferer at distance r is heard} = P_C (1 - P_B(r)).
    double heard_prob(double r) const {
        return coverage_prob(coverage_angle) * (1.0 - blocking_prob(r, intensity, blocker_radius));
    }

    double link_power(double r) const { return coefficient / (r * r) * std::exp(-absorption * r); }
};

/// Interferers of one realization, placed uniformly on the annulus [r_B, R] around the origin.
inline PointField sample_interferer_field(const InterferenceGeometry& g, RandomStream& rng) {
    PointField field;
    const double r0 = g.blocker_radius * g.blocker_radius;
    const double span = g.horizon * g.horizon - r0;
    const std::uint64_t count = sample_poisson(g.intensity * kPi * span, rng);
    field.points.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const double r = std::sqrt(r0 + span * rng.uniform());
        const double t = 2.0 * kPi * rng.uniform();
        field.points.push_back({r * std::cos(t), r * std::sin(t)});
        field.fading.push_back(1.0);
        field.power.push_back(1.0);
    }
    return field;
}

/// I = A sum_i r_i^-2 e^{-K r_i} 1_i with independent indicators 1_i ~ Bernoulli(P_C (1 - P_B(r_i))).
/// Points beyond the horizon contribute nothing.
inline double realize_thz_interference(const PointField& field, const InterferenceGeometry& g, Point receiver,
                                       RandomStream& rng) {
    double total = 0.0;
    for (const Point& p : field.points) {
        const double r = distance(p, receiver);
        if (r < g.blocker_radius) throw DomainError("realize_thz_interference: interferer inside blocker radius");
        if (r > g.horizon) continue;
        if (rng.bernoulli(g.heard_prob(r))) total += g.link_power(r);
    }
    return total;
}

/// One interference draw at the origin without materialising the field.
inline double sample_thz_interference(const InterferenceGeometry& g, RandomStream& rng) {
    const double r0 = g.blocker_radius * g.blocker_radius;
    const double span = g.horizon * g.horizon - r0;
    const std::uint64_t count = sample_poisson(g.intensity * kPi * span, rng);
    double total = 0.0;
    for (std::uint64_t i = 0; i < count; ++i) {
        const double r = std::sqrt(r0 + span * rng.uniform());
        if (rng.bernoulli(g.heard_prob(r))) total += g.link_power(r);
    }
    return total;
}

struct ThzInterferenceStats {
    double mean = 0.0;
    double variance = 0.0;
};

enum class VarianceForm {
    /// lambda * integral of f(x)^2 P{heard}: the variance of independently thinned shot noise.
    campbell,
    /// lambda * integral of (f(x) P{heard})^2, the squared-probability display, with the
    /// exponential integral evaluated at -a r so the antiderivative is consistent.
    squared_thinning,
};

namespace integrals {

// Antiderivative of r^-3 e^{-a r}.
inline double inverse_cube_exp_antiderivative(double r, double a) {
    const double e = std::exp(-a * r);
    double v = -e / (2.0 * r * r) + a * e / (2.0 * r);
    if (a > 0.0) v += a * a / 2.0 * exp_integral_ei(-a * r);
    return v;
}

}  // namespace integrals

/// Closed-form mean and variance of the aggregate THz interference via Campbell's theorem.
inline ThzInterferenceStats thz_interference_stats(const InterferenceGeometry& g,
                                                   VarianceForm form = VarianceForm::campbell) {
    detail::require(g.horizon > g.blocker_radius, "R", "horizon must exceed the blocker radius");
    detail::require(g.intensity >= 0.0, "lambda", "intensity must be >= 0");
    if (g.intensity == 0.0) return {0.0, 0.0};
    const double lam = g.intensity;
    const double rb = g.blocker_radius;
    const double big_r = g.horizon;
    const double c = g.absorption + lam * rb;

    ThzInterferenceStats out;
    out.mean = g.coefficient * lam * g.coverage_angle * std::exp(lam * rb * rb) *
               (exp_integral_ei(-big_r * c) - exp_integral_ei(-rb * c));

    double prefactor = 0.0;
    double a = 0.0;
    if (form == VarianceForm::campbell) {
        prefactor = g.coefficient * g.coefficient * lam * g.coverage_angle * std::exp(lam * rb * rb);
        a = 2.0 * g.absorption + lam * rb;
    } else {
        prefactor = g.coefficient * g.coefficient * lam * g.coverage_angle * g.coverage_angle / (2.0 * kPi) *
                    std::exp(2.0 * lam * rb * rb);
        a = 2.0 * c;
    }
    out.variance = prefactor * (integrals::inverse_cube_exp_antiderivative(big_r, a) -
                                integrals::inverse_cube_exp_antiderivative(rb, a));
    if (!std::isfinite(out.mean) || !std::isfinite(out.variance)) {
        throw NumericError("thz_interference_stats: non-finite moment");
    }
    return out;
}

}  // namespace covert::thz
