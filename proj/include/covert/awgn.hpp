#pragma once

// Covertness and reliability in AWGN networks hidden by aggregate interference: the detection
// error bound and covert distance, a radiometer (energy detector) simulator for Willie, Bob's
// decoding-error bound, covert bit count, and spatial throughput.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <variant>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covert/error.hpp"
#include "covert/geometry.hpp"
#include "covert/parallel.hpp"
#include "covert/rng.hpp"
#include "covert/shot_noise.hpp"
#include "covert/stats.hpp"

namespace covert::awgn {

/// How often Willie's interference field is redrawn.
enum class FieldRefresh {
    per_trace,   ///< one field per detection period; symbols redrawn per sample
    per_sample,  ///< a fresh interferer field for every sample
};

struct AwgnScenario {
    double transmit_power = 1.0;                 // P_t of Alice, W
    std::optional<double> interferer_power;      // defaults to P_t (all nodes share one power)
    double intensity = 1.0;                      // lambda, 1/m^2
    double d_aw = 1.0;                           // m
    double d_ab = 1.0;                           // m
    double noise_willie = 1.0;                   // sigma^2_w0, W
    double noise_bob = 1.0;                      // sigma^2_b0, W
    std::uint32_t samples = 100;                 // n channel uses
    double transmit_prob = 0.5;                  // p
    PathLossLaw law = PathLossLaw::bounded(4.0);
    Region arena = Region::square(100.0);        // Willie sits at its centre
    FadingMode fading = FadingMode::rayleigh;
    FieldRefresh refresh = FieldRefresh::per_trace;
    /// Interferers beyond this radius are replaced by their Campbell mean; 0 samples the whole arena.
    double near_field_radius = 0.0;

    double alpha() const noexcept { return law.alpha(); }
    double interference_power() const noexcept { return interferer_power.value_or(transmit_power); }

    void validate() const {
        detail::require(transmit_power >= 0.0 && std::isfinite(transmit_power), "P_t", "must be >= 0");
        detail::require(interference_power() >= 0.0, "P_i", "must be >= 0");
        detail::require(intensity >= 0.0 && std::isfinite(intensity), "lambda", "must be >= 0");
        detail::require(d_aw > 0.0, "d_aw", "must be > 0");
        detail::require(d_ab > 0.0, "d_ab", "must be > 0");
        detail::require(noise_willie >= 0.0, "sigma2_w0", "must be >= 0");
        detail::require(noise_bob >= 0.0, "sigma2_b0", "must be >= 0");
        detail::require(samples >= 1, "n", "must be >= 1");
        detail::require(transmit_prob >= 0.0 && transmit_prob <= 1.0, "p", "must lie in [0, 1]");
        detail::require(near_field_radius >= 0.0, "near_field_radius", "must be >= 0");
    }
};

// ---------------------------------------------------------------------------------------------
// Analytic covertness and reliability

/// Lower bound on Willie's mean detection error, max{0, 1/2 - sqrt(n/8) f(lambda) / (2 d_aw^alpha)}.
/// Transmit power cancels out of the bound.
inline double willie_error_lower_bound(double n, double d_aw, double alpha, double intensity, int dimension = 2) {
    detail::require(n >= 1.0, "n", "must be >= 1");
    detail::require(d_aw > 0.0, "d_aw", "must be > 0");
    const double f = taylor_density_factor(intensity, alpha, dimension);
    const double penalty = std::sqrt(n / 8.0) * f / (2.0 * std::pow(d_aw, alpha));
    return std::max(0.0, 0.5 - penalty);
}

/// Smallest d_aw for which the detection-error bound stays at or above 1/2 - epsilon.
inline double covert_distance(double n, double alpha, double intensity, int dimension, double epsilon) {
    if (!(epsilon > 0.0)) throw ParameterError("epsilon", "must be > 0");
    detail::require(n >= 1.0, "n", "must be >= 1");
    const double f = taylor_density_factor(intensity, alpha, dimension);
    return std::pow(f / (4.0 * std::sqrt(2.0) * epsilon), 1.0 / alpha) * std::pow(n, 1.0 / (2.0 * alpha));
}

/// Upper bound on Bob's mean decoding error for alpha = 4, 2^{nR} pi^{7/2} lambda / (3 sqrt n), clamped to [0, 1].
inline double bob_error_upper_bound(double n, double rate, double intensity, double alpha = 4.0) {
    if (alpha != 4.0) throw ParameterError("alpha", "closed-form decoding bound is only available for alpha = 4");
    detail::require(n >= 1.0, "n", "must be >= 1");
    detail::require(rate >= 0.0, "R", "must be >= 0");
    detail::require(intensity >= 0.0, "lambda", "must be >= 0");
    if (intensity == 0.0) return 0.0;
    const double log2_bound = n * rate + std::log2(std::pow(kPi, 3.5) * intensity / 3.0) - 0.5 * std::log2(n);
    return log2_bound >= 0.0 ? 1.0 : std::exp2(log2_bound);
}

/// Bits Bob decodes with mean error at most epsilon, log2(3 epsilon sqrt(n) / (pi^{7/2} lambda)), clamped at 0.
inline double covert_bits(double n, double intensity, double epsilon, double alpha = 4.0) {
    if (alpha != 4.0) throw ParameterError("alpha", "closed-form covert bit count is only available for alpha = 4");
    detail::require(n >= 1.0, "n", "must be >= 1");
    detail::require(intensity > 0.0, "lambda", "must be > 0");
    detail::require(epsilon > 0.0, "epsilon", "must be > 0");
    return std::max(0.0, std::log2(3.0 * epsilon * std::sqrt(n) / (std::pow(kPi, 3.5) * intensity)));
}

/// Alice's power above which the decoding bound's arctan term dominates its noise term:
/// P_t > 9 sigma^2_b0 / (4 pi^4 lambda^2 Psi_ab). Reported, not enforced.
inline double power_condition_threshold(double intensity, double noise_bob, double psi_ab = 1.0) {
    detail::require(intensity > 0.0, "lambda", "must be > 0");
    detail::require(psi_ab > 0.0, "Psi_ab", "must be > 0");
    return 9.0 * noise_bob / (4.0 * std::pow(kPi, 4) * intensity * intensity * psi_ab);
}

enum class ThroughputScheme {
    jammer,        ///< friendly jammer near Willie, Alice power shrinking as 1/sqrt(n)
    interference,  ///< hiding in the aggregate interference of randomized transmissions
};

struct ThroughputParams {
    double intensity = 0.1;  // lambda
    double sinr_threshold = 1.0;  // xi
    double d_ab = 1.0;
    double alpha = 4.0;
    double jammer_constant = 1.0;  // c
};

/// Spatial density of successful transmissions, per m^2.
inline double spatial_throughput(ThroughputScheme scheme, const ThroughputParams& t, double n) {
    detail::require(t.sinr_threshold > 0.0, "xi", "must be > 0");
    detail::require(t.intensity >= 0.0, "lambda", "must be >= 0");
    detail::require(t.d_ab > 0.0, "d_ab", "must be > 0");
    if (t.intensity == 0.0) return 0.0;
    if (scheme == ThroughputScheme::jammer) {
        detail::require(t.jammer_constant > 0.0, "c", "must be > 0");
        detail::require(n >= 0.0, "n", "must be >= 0");
        const double exponent = std::pow(t.d_ab, t.alpha) * t.sinr_threshold * std::sqrt(n) /
                                (t.jammer_constant * std::pow(t.intensity, t.alpha / 2.0));
        return t.intensity * std::exp(-exponent);
    }
    const double delta = 2.0 / t.alpha;
    detail::require(delta < 1.0, "alpha", "must be > 2");
    return t.intensity * std::exp(-kPi * t.intensity * std::pow(t.sinr_threshold, delta) * t.d_ab * t.d_ab *
                                  std::tgamma(1.0 + delta) * std::tgamma(1.0 - delta));
}

/// Smallest n at which the jammer scheme's throughput no longer exceeds the interference scheme's.
inline double throughput_crossover(const ThroughputParams& t) {
    const double target = spatial_throughput(ThroughputScheme::interference, t, 0.0);
    if (target <= 0.0) throw DomainError("throughput_crossover: interference throughput is zero");
    // Solve d^alpha xi sqrt(n) / (c lambda^{alpha/2}) = ln(lambda / target).
    const double log_ratio = std::log(t.intensity / target);
    const double root = log_ratio * t.jammer_constant * std::pow(t.intensity, t.alpha / 2.0) /
                        (std::pow(t.d_ab, t.alpha) * t.sinr_threshold);
    double n = root * root;
    while (spatial_throughput(ThroughputScheme::jammer, t, n) > target) {
        n = std::nextafter(n, std::numeric_limits<double>::infinity());
    }
    return n;
}

// ---------------------------------------------------------------------------------------------
// Radiometer simulation

/// Interference power seen by Willie at the centre of the arena.
class WillieInterference {
public:
    explicit WillieInterference(const AwgnScenario& s)
        : law_(s.law),
          intensity_(s.intensity),
          power_(s.interference_power()),
          arena_(s.arena),
          near_radius_(s.near_field_radius),
          fading_(s.fading) {
        if (near_radius_ > 0.0) {
            const double reach = arena_.is_disk() ? std::get<Disk>(arena_.shape()).radius
                                                  : std::get<Square>(arena_.shape()).side / 2.0;
            detail::require(near_radius_ <= reach, "near_field_radius", "must fit inside the arena");
            const bool power_law_beyond = law_.kind() == PathLossLaw::Kind::unbounded ||
                                          (law_.kind() == PathLossLaw::Kind::bounded && near_radius_ >= 1.0) ||
                                          (law_.kind() == PathLossLaw::Kind::truncated && near_radius_ >= law_.guard());
            detail::require(power_law_beyond, "near_field_radius", "must lie where the law is a pure power law");
            far_mean_ = intensity_ * kFadingMean * far_field_integral();
        }
    }

    /// Unit-power draw (multiply by `power()` for watts). Split this way so sweeps over P_t
    /// reuse identical random numbers.
    double draw_unit(RandomStream& rng) const {
        double total = 0.0;
        if (near_radius_ > 0.0) {
            const std::uint64_t count = sample_poisson(intensity_ * kPi * near_radius_ * near_radius_, rng);
            for (std::uint64_t k = 0; k < count; ++k) {
                const double r = near_radius_ * std::sqrt(rng.uniform_open_closed());
                total += law_.gain(r) * sample_fading_power(rng, fading_);
            }
            return total + far_mean_;
        }
        const Point c = arena_.center();
        for_each_ppp_point(arena_, intensity_, rng, [&](Point p) {
            total += law_.gain(distance(p, c)) * sample_fading_power(rng, fading_);
        });
        return total;
    }

    double draw(RandomStream& rng) const { return power_ * draw_unit(rng); }
    double power() const noexcept { return power_; }

    /// Mean interference contributed by the far field (zero when the whole arena is sampled).
    double far_field_mean() const noexcept { return power_ * far_mean_; }

private:
    // integral over arena \ disk(near_radius) of r^-alpha dx.
    double far_field_integral() const {
        const double a = law_.alpha();
        auto radial = [a](double r_in, double r_out) {
            return a == 2.0 ? std::log(r_out / r_in) : (std::pow(r_in, 2.0 - a) - std::pow(r_out, 2.0 - a)) / (a - 2.0);
        };
        if (arena_.is_disk()) return 2.0 * kPi * radial(near_radius_, std::get<Disk>(arena_.shape()).radius);
        const double half = std::get<Square>(arena_.shape()).side / 2.0;
        // 8 symmetric wedges of theta in [0, pi/4], outer radius half / cos(theta); Simpson's rule.
        constexpr int intervals = 2048;
        const double h = (kPi / 4.0) / intervals;
        double sum = 0.0;
        for (int i = 0; i <= intervals; ++i) {
            const double theta = i * h;
            const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            sum += w * radial(near_radius_, half / std::cos(theta));
        }
        return 8.0 * sum * h / 3.0;
    }

    PathLossLaw law_;
    double intensity_;
    double power_;
    Region arena_;
    double near_radius_;
    FadingMode fading_;
    double far_mean_ = 0.0;
};

enum class AliceMode { silent, transmitting, alternating };

inline const char* to_string(AliceMode m) {
    switch (m) {
        case AliceMode::silent: return "silent";
        case AliceMode::transmitting: return "transmitting";
        case AliceMode::alternating: return "alternating";
    }
    return "?";
}

struct DetectorTrace {
    std::vector<double> energies;  // y_i^2
    double statistic = 0.0;        // T(y), the mean energy
    AliceMode mode = AliceMode::silent;
};

/// One detection period of Willie's radiometer. Random draws are consumed in the same order in
/// every mode, so traces built from equal streams differ only through Alice's contribution.
inline DetectorTrace simulate_radiometer(const AwgnScenario& s, AliceMode mode, RandomStream& rng,
                                         const WillieInterference& interference) {
    const double alice_gain = s.transmit_power * s.law.gain(s.d_aw);
    const double psi_aw = sample_fading_power(rng, s.fading);  // static over the detection period
    double unit_interference = s.refresh == FieldRefresh::per_trace ? interference.draw_unit(rng) : 0.0;

    DetectorTrace trace;
    trace.mode = mode;
    trace.energies.resize(s.samples);
    double sum = 0.0;
    for (std::uint32_t i = 0; i < s.samples; ++i) {
        if (s.refresh == FieldRefresh::per_sample) unit_interference = interference.draw_unit(rng);
        const bool slot_active = rng.uniform() < s.transmit_prob;
        const double z = rng.normal();
        bool active = false;
        switch (mode) {
            case AliceMode::silent: active = false; break;
            case AliceMode::transmitting: active = true; break;
            case AliceMode::alternating: active = slot_active; break;
        }
        const double variance =
            s.noise_willie + interference.power() * unit_interference + (active ? alice_gain * psi_aw : 0.0);
        const double y2 = variance * z * z;
        trace.energies[i] = y2;
        sum += y2;
    }
    trace.statistic = sum / s.samples;
    return trace;
}

inline DetectorTrace simulate_radiometer(const AwgnScenario& s, AliceMode mode, RandomStream& rng) {
    s.validate();
    return simulate_radiometer(s, mode, rng, WillieInterference(s));
}

struct DetectionOutcome {
    double false_alarm = 0.0;
    double missed_detection = 0.0;
    double threshold = 0.0;

    double error() const noexcept { return (false_alarm + missed_detection) / 2.0; }
};

struct ThresholdRule {
    enum class Kind { fixed, best_on_grid } kind = Kind::best_on_grid;
    double gamma = 0.0;
    int grid_points = 256;

    static ThresholdRule fixed(double gamma) { return {Kind::fixed, gamma, 0}; }
    static ThresholdRule best_on_grid(int points = 256) { return {Kind::best_on_grid, 0.0, points}; }
};

/// Empirical error of the test T(y) > gamma on given H0 / H1 statistics.
inline DetectionOutcome detection_outcome(std::span<const double> h0, std::span<const double> h1, double gamma) {
    DetectionOutcome out;
    out.threshold = gamma;
    out.false_alarm = static_cast<double>(std::count_if(h0.begin(), h0.end(), [&](double t) { return t > gamma; })) /
                      static_cast<double>(h0.size());
    out.missed_detection =
        static_cast<double>(std::count_if(h1.begin(), h1.end(), [&](double t) { return t <= gamma; })) /
        static_cast<double>(h1.size());
    return out;
}

inline DetectionOutcome apply_threshold_rule(std::span<const double> h0, std::span<const double> h1,
                                             const ThresholdRule& rule) {
    if (rule.kind == ThresholdRule::Kind::fixed) return detection_outcome(h0, h1, rule.gamma);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (auto xs : {h0, h1}) {
        for (double t : xs) {
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
    }
    if (!(hi > lo)) throw ThresholdError("threshold grid is degenerate: all statistics are equal");
    const int points = std::max(2, rule.grid_points);
    DetectionOutcome best;
    bool first = true;
    for (int j = 0; j < points; ++j) {
        const double gamma = lo + (hi - lo) * j / (points - 1);
        const DetectionOutcome o = detection_outcome(h0, h1, gamma);
        if (first || o.error() < best.error()) {
            best = o;
            first = false;
        }
    }
    return best;
}

struct EmpiricalRun {
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::uint64_t stream_offset = 0;  // first stream id used by run-indexed simulations
};

/// Paired H0 (silent) / H1 radiometer trials and the resulting empirical error.
inline DetectionOutcome willie_error_empirical(const AwgnScenario& s, std::size_t trials, const ThresholdRule& rule,
                                               const EmpiricalRun& run, AliceMode h1_mode = AliceMode::transmitting) {
    s.validate();
    detail::require(trials >= 100, "trials", "need at least 100 trials");
    const WillieInterference interference(s);
    struct Pair {
        double h0 = 0.0;
        double h1 = 0.0;
    };
    const auto pairs = parallel_trials(trials, run.workers, [&](std::size_t t) {
        RandomStream rng0 = derive_stream(run.seed, 2 * t);
        RandomStream rng1 = derive_stream(run.seed, 2 * t + 1);
        return Pair{simulate_radiometer(s, AliceMode::silent, rng0, interference).statistic,
                    simulate_radiometer(s, h1_mode, rng1, interference).statistic};
    });
    std::vector<double> h0, h1;
    h0.reserve(trials);
    h1.reserve(trials);
    for (const Pair& p : pairs) {
        h0.push_back(p.h0);
        h1.push_back(p.h1);
    }
    return apply_threshold_rule(h0, h1, rule);
}

/// T(y) of `runs` independent detection periods. Run r uses stream (seed, stream_offset + r), so
/// cells of a sweep share random numbers.
inline std::vector<double> radiometer_statistics(const AwgnScenario& s, AliceMode mode, std::size_t runs,
                                                 const EmpiricalRun& run) {
    s.validate();
    const WillieInterference interference(s);
    return parallel_trials(runs, run.workers, [&](std::size_t r) {
        RandomStream rng = derive_stream(run.seed, run.stream_offset + r);
        return simulate_radiometer(s, mode, rng, interference).statistic;
    });
}

struct DispersionCell {
    AliceMode mode = AliceMode::silent;
    double d_aw = 0.0;
    std::uint32_t samples = 0;
    double mean = 0.0;
    stats::Quartiles quartiles;

    double iqr() const noexcept { return quartiles.iqr(); }
};

enum class StreamSharing {
    all_cells,     ///< every cell reuses streams 0..runs-1
    per_distance,  ///< distance index k uses streams k*runs ..; modes and n still share them
};

/// Interquartile spread of T(y) for every (mode, d_aw, n) cell.
inline std::vector<DispersionCell> iqr_dispersion_sweep(const AwgnScenario& base, std::span<const AliceMode> modes,
                                                        std::span<const double> distances,
                                                        std::span<const std::uint32_t> sample_counts, std::size_t runs,
                                                        const EmpiricalRun& run,
                                                        StreamSharing sharing = StreamSharing::all_cells) {
    detail::require(runs >= 20, "runs", "need at least 20 runs per cell");
    std::vector<DispersionCell> cells;
    for (std::uint32_t n : sample_counts) {
        for (std::size_t k = 0; k < distances.size(); ++k) {
            const double d = distances[k];
            EmpiricalRun cell_run = run;
            if (sharing == StreamSharing::per_distance) cell_run.stream_offset = run.stream_offset + k * runs;
            for (AliceMode mode : modes) {
                AwgnScenario s = base;
                s.samples = n;
                s.d_aw = d;
                const auto t = radiometer_statistics(s, mode, runs, cell_run);
                cells.push_back({mode, d, n, stats::moments(t).mean, stats::quartiles(t)});
            }
        }
    }
    return cells;
}

}  // namespace covert::awgn
