#pragma once

// Kirchhoff (Beckmann) rough-surface scattering, SINR assembly and the normalized secrecy
// capacity used to score covert NLOS links in THz networks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "covert/error.hpp"
#include "covert/geometry.hpp"
#include "covert/thz.hpp"

namespace covert::thz {

/// Gaussian-rough perfectly conducting rectangular plate of half-sides L_x, L_y.
struct ScatterSurface {
    double height_std = 0.088e-3;        // sigma_h, m
    double correlation_length = 1.8e-3;  // l_c, m
    double half_side_x = 0.01;           // L_x, m
    double half_side_y = 0.01;           // L_y, m

    /// Square plate with the given illuminated area (A = 4 L_x L_y).
    static ScatterSurface square(double height_std, double correlation_length, double area) {
        detail::require(area > 0.0, "area", "illuminated area must be > 0");
        const double half = std::sqrt(area) / 2.0;
        return {height_std, correlation_length, half, half};
    }

    double area() const noexcept { return 4.0 * half_side_x * half_side_y; }

    void validate() const {
        detail::require(height_std >= 0.0, "sigma_h", "height deviation must be >= 0");
        detail::require(correlation_length > 0.0, "l_c", "correlation length must be > 0");
        detail::require(half_side_x > 0.0 && half_side_y > 0.0, "area", "plate sides must be > 0");
    }
};

/// Incidence theta1, scattering theta2 and out-of-plane theta3 angles, radians.
struct ScatterGeometry {
    double incidence = 0.0;
    double scattering = 0.0;
    double azimuth = 0.0;

    static ScatterGeometry in_plane_degrees(double incidence_deg, double scattering_deg) {
        return {incidence_deg * kPi / 180.0, scattering_deg * kPi / 180.0, 0.0};
    }
};

struct KirchhoffTerms {
    double coherent = 0.0;  // e^-g rho0^2
    double diffuse = 0.0;
    double roughness = 0.0;  // g = sigma_h^2 v_z^2

    double total() const noexcept { return coherent + diffuse; }
};

// Free-space wave speed used for the scattering wavenumber k = 2 pi f / c.
inline constexpr double kWaveSpeed = 3.0e8;

namespace scatter_detail {

inline double sinc(double x) noexcept { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

}  // namespace scatter_detail

/// Mean scattered power relative to the incident power for a Gaussian surface in the
/// Kirchhoff approximation, split into the coherent (specular) and diffuse parts.
inline KirchhoffTerms kirchhoff_terms(double frequency, const ScatterSurface& surface, const ScatterGeometry& geom) {
    surface.validate();
    detail::require(frequency > 0.0, "f", "frequency must be > 0");
    const double t1 = geom.incidence;
    const double t2 = geom.scattering;
    const double t3 = geom.azimuth;
    detail::require(t1 >= 0.0 && t1 < kPi / 2.0, "theta1", "incidence angle must lie in [0, pi/2)");
    detail::require(t2 >= 0.0 && t2 <= kPi / 2.0, "theta2", "scattering angle must lie in [0, pi/2]");
    detail::require(t3 >= 0.0 && t3 < 2.0 * kPi, "theta3", "azimuth must lie in [0, 2pi)");

    const double k = 2.0 * kPi * frequency / kWaveSpeed;
    const double vx = k * (std::sin(t1) - std::sin(t2) * std::cos(t3));
    const double vy = -k * std::sin(t2) * std::sin(t3);
    const double vz = -k * (std::cos(t1) + std::cos(t2));
    const double vxy2 = vx * vx + vy * vy;
    const double lc = surface.correlation_length;
    const double g = surface.height_std * surface.height_std * vz * vz;
    const double f_num = 1.0 + std::cos(t1) * std::cos(t2) - std::sin(t1) * std::sin(t2) * std::cos(t3);
    const double f_den = std::cos(t1) * (std::cos(t1) + std::cos(t2));
    const double big_f = f_num / f_den;
    const double rho0 = scatter_detail::sinc(vx * surface.half_side_x) * scatter_detail::sinc(vy * surface.half_side_y);
    const double diffuse_scale = kPi * lc * lc * big_f * big_f / surface.area();

    KirchhoffTerms out;
    out.roughness = g;
    out.coherent = std::exp(-g) * rho0 * rho0;
    if (g == 0.0) return out;

    if (g > 300.0) {
        out.diffuse = diffuse_scale / g * std::exp(-vxy2 * lc * lc / (4.0 * g));
        return out;
    }

    // sum_{m>=1} e^-g g^m / (m! m) exp(-vxy^2 lc^2 / 4m), terms formed in log space.
    const double log_g = std::log(g);
    const int cap = 50 + 10 * static_cast<int>(std::ceil(g));
    double sum = 0.0;
    for (int m = 1; m <= cap; ++m) {
        const double log_term = -g + m * log_g - std::lgamma(m + 1.0) - std::log(static_cast<double>(m)) -
                                vxy2 * lc * lc / (4.0 * m);
        const double term = std::exp(log_term);
        sum += term;
        if (m > g && term < 1e-12 * sum) {
            out.diffuse = diffuse_scale * sum;
            return out;
        }
    }
    throw NumericError("kirchhoff_gain: diffuse series did not converge");
}

inline double kirchhoff_gain(double frequency, const ScatterSurface& surface, const ScatterGeometry& geom) {
    return kirchhoff_terms(frequency, surface, geom).total();
}

enum class SecrecyConvention {
    as_printed,      ///< [log(1+SINR_B) - log(SINR_W)] / log(1+SINR_B)
    log_one_plus,    ///< [log(1+SINR_B) - log(1+SINR_W)] / log(1+SINR_B)
};

inline double normalized_secrecy_capacity(double sinr_b, double sinr_w,
                                          SecrecyConvention convention = SecrecyConvention::as_printed,
                                          bool clamp = false) {
    detail::require(sinr_b >= 0.0, "SINR_B", "must be >= 0");
    detail::require(sinr_w > 0.0, "SINR_W", "must be > 0");
    const double denom = std::log1p(sinr_b);
    if (!(denom > 0.0)) throw DomainError("normalized_secrecy_capacity: log(1 + SINR_B) vanishes");
    const double willie = convention == SecrecyConvention::as_printed ? std::log(sinr_w) : std::log1p(sinr_w);
    const double cs = (denom - willie) / denom;
    return clamp ? std::clamp(cs, 0.0, 1.0) : cs;
}

/// Second-order Taylor mean of P_rx / (noise + I).
inline double mean_sinr_taylor(double received, double noise, const ThzInterferenceStats& interference) {
    const double floor = noise + interference.mean;
    if (!(floor > 0.0)) throw DomainError("mean_sinr_taylor: noise plus mean interference must be > 0");
    return received / floor + received * interference.variance / (floor * floor * floor);
}

enum class WillieAntenna { directional, omni };

struct EvaluationOptions {
    VarianceForm variance = VarianceForm::campbell;
    SecrecyConvention convention = SecrecyConvention::as_printed;
    bool clamp = false;
};

struct SecrecyReport {
    double gain_bob = 0.0;     // G_B
    double gain_willie = 0.0;  // G_W
    double received_bob = 0.0;
    double received_willie = 0.0;
    double noise = 0.0;
    ThzInterferenceStats interference_bob;
    ThzInterferenceStats interference_willie;
    double sinr_bob = 0.0;
    double sinr_willie = 0.0;
    double secrecy = 0.0;  // normalized secrecy capacity
};

inline SecrecyReport evaluate_scenario(const ThzScenario& s, const ScatterSurface& surface,
                                       const ScatterGeometry& geom_bob, const ScatterGeometry& geom_willie,
                                       WillieAntenna willie_antenna = WillieAntenna::directional,
                                       const EvaluationOptions& options = {}) {
    s.validate();
    const double willie_phi = willie_antenna == WillieAntenna::omni ? 2.0 * kPi : s.directivity;
    const double g_tx = antenna_gain(s.directivity);

    SecrecyReport out;
    out.gain_bob = kirchhoff_gain(s.frequency, surface, geom_bob);
    out.gain_willie = kirchhoff_gain(s.frequency, surface, geom_willie);
    const double a_bob = link_coefficient(s.link_constant, g_tx, antenna_gain(s.directivity));
    const double a_willie = link_coefficient(s.link_constant, g_tx, antenna_gain(willie_phi));
    out.received_bob = received_power(a_bob, s.d_ab, s.absorption) * out.gain_bob;
    out.received_willie = received_power(a_willie, s.d_aw, s.absorption) * out.gain_willie;
    out.noise = johnson_nyquist_psd(s.frequency, s.temperature) * s.noise_bandwidth;
    out.interference_bob = thz_interference_stats(InterferenceGeometry::for_receiver(s, s.directivity), options.variance);
    out.interference_willie = thz_interference_stats(InterferenceGeometry::for_receiver(s, willie_phi), options.variance);
    out.sinr_bob = mean_sinr_taylor(out.received_bob, out.noise, out.interference_bob);
    out.sinr_willie = mean_sinr_taylor(out.received_willie, out.noise, out.interference_willie);
    out.secrecy = normalized_secrecy_capacity(out.sinr_bob, out.sinr_willie, options.convention, options.clamp);
    return out;
}

struct ReflectionCandidate {
    Point position;
    ScatterSurface surface;
    double incidence = 0.0;  // theta1, rad
};

/// Reflection point closest to Bob; equal distances go to the larger incidence angle, then
/// to the earlier candidate.
inline std::size_t select_reflection_point(std::span<const ReflectionCandidate> candidates, Point bob) {
    if (candidates.empty()) throw ParameterError("candidates", "need at least one reflection point");
    std::size_t best = 0;
    double best_d = distance(candidates[0].position, bob);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const double d = distance(candidates[i].position, bob);
        if (d < best_d || (d == best_d && candidates[i].incidence > candidates[best].incidence)) {
            best = i;
            best_d = d;
        }
    }
    return best;
}

}  // namespace covert::thz
