#pragma once

// Built-in figure manifests (ids 3..14) and the oracle self-test table.
//
// Each figure starts from a base configuration, pins its captioned parameters on top, and
// embeds the resulting configuration plus any assumed values in the table header.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "covert/awgn.hpp"
#include "covert/expint.hpp"
#include "covert/harness/config.hpp"
#include "covert/harness/table.hpp"
#include "covert/rng.hpp"
#include "covert/scattering.hpp"
#include "covert/shot_noise.hpp"
#include "covert/stats.hpp"
#include "covert/thz.hpp"

namespace covert::harness {

/// Bad command-line usage, including unknown figure ids. Maps to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::array<int, 12> kFigureIds = {3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14};

inline std::string supported_figures() {
    std::string out;
    for (int id : kFigureIds) out += (out.empty() ? "" : ", ") + std::to_string(id);
    return out;
}

struct FigureOptions {
    std::uint64_t seed = 1;
    std::optional<std::size_t> trials;  // overrides the manifest's run count where one exists
    unsigned workers = 1;
    ExperimentConfig base;              // settings not pinned by the manifest come from here
};

namespace figure_detail {

inline void embed(ResultTable& t, const ExperimentConfig& cfg) {
    for (const auto& line : cfg.canonical()) t.add_provenance("config", line);
}

inline ExperimentConfig with_sweep(ExperimentConfig cfg, std::string axis, std::vector<double> values) {
    cfg.sweep = SweepAxis{std::move(axis), std::move(values)};
    return cfg;
}

inline std::vector<double> range(double first, double last, double step) {
    std::vector<double> out;
    const auto count = static_cast<long>(std::floor((last - first) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) out.push_back(first + step * static_cast<double>(i));
    return out;
}

inline constexpr std::array<awgn::AliceMode, 3> kModes = {awgn::AliceMode::silent, awgn::AliceMode::transmitting,
                                                          awgn::AliceMode::alternating};

// Shared radiometer settings of Figs 5-8: a fresh field per sample, near field sampled within
// 5 m of Willie and the rest replaced by its mean.
inline void radiometer_manifest(ExperimentConfig& cfg, ResultTable& t) {
    cfg.awgn.law = PathLossLaw::bounded(4.0);
    cfg.awgn.fading = FadingMode::rayleigh;
    cfg.awgn.noise_willie = 1.0;
    cfg.awgn.intensity = 1.0;
    cfg.awgn.arena = Region::square(100.0);
    cfg.awgn.refresh = awgn::FieldRefresh::per_sample;
    cfg.awgn.near_field_radius = 5.0;
    cfg.awgn.transmit_prob = 0.5;
    t.add_assumption("interference field redrawn for every sample; Alice's fading fixed per run");
    t.add_assumption("interferers beyond 5 m replaced by their mean contribution");
    t.add_assumption("alternating mode transmits in each slot with probability p = 0.5");
}

inline double thz_secrecy(const ExperimentConfig& cfg, thz::WillieAntenna willie) {
    return thz::evaluate_scenario(cfg.thz, cfg.surface, cfg.bob_geometry(), cfg.willie_geometry(), willie,
                                  cfg.evaluation)
        .secrecy;
}

inline void thz_manifest(ExperimentConfig& cfg, ResultTable& t) {
    cfg.thz.directivity = kPi / 18.0;
    cfg.thz.blocker_radius = 0.1;
    cfg.thz.horizon = 10.0;
    cfg.thz.absorption = 0.01;
    cfg.thz.d_ab = 5.0;
    cfg.surface = thz::ScatterSurface::square(cfg.surface.height_std, 1.8e-3, 4e-4);
    cfg.theta1_deg = 60.0;
    cfg.theta_b_deg = 60.0;
    cfg.theta3_deg = 0.0;
    t.add_assumption("Willie's scattering path length d_aw = " + format_number(cfg.thz.d_aw) + " m");
    t.add_assumption("noise power is the Johnson-Nyquist PSD over a " + format_number(cfg.thz.noise_bandwidth) +
                     " Hz bandwidth at T = " + format_number(cfg.thz.temperature) + " K");
}

inline const std::vector<double>& roughness_set() {
    static const std::vector<double> v = {0.038e-3, 0.058e-3, 0.088e-3, 0.118e-3};
    return v;
}

inline std::string mm_label(double meters) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3fmm", meters * 1e3);
    return buf;
}

inline ResultTable fig3(const FigureOptions& o) {
    ResultTable t("Fig. 3: Kirchhoff path gain at 500 GHz", {"theta1_deg", "theta2_deg", "gain", "gain_db"});
    ExperimentConfig cfg = o.base;
    cfg.thz.frequency = 500e9;
    cfg.surface = thz::ScatterSurface::square(0.01e-3, 0.1e-3, 4e-4);
    cfg.theta3_deg = 0.0;
    t.add_assumption("theta1 stops at 89 deg since the gain needs cos(theta1) > 0");
    t.add_assumption("square plate with half-side sqrt(area)/2");
    for (int a = 0; a <= 89; ++a) {
        for (int b = 0; b <= 90; ++b) {
            const double g = thz::kirchhoff_gain(cfg.thz.frequency, cfg.surface,
                                                 thz::ScatterGeometry::in_plane_degrees(a, b));
            t.add_row({static_cast<double>(a), static_cast<double>(b), g,
                       g > 0.0 ? 10.0 * std::log10(g) : -std::numeric_limits<double>::infinity()});
        }
    }
    embed(t, with_sweep(cfg, "theta1_deg,theta2_deg", range(0, 90, 1)));
    t.plot().kind = PlotSpec::Kind::heatmap;
    t.plot().x = "theta2_deg";
    t.plot().y = "theta1_deg";
    t.plot().value = "gain_db";
    return t;
}

inline ResultTable fig4(const FigureOptions& o) {
    ResultTable t("Fig. 4: noise and aggregate interference realizations", {"index", "noise", "interference"});
    ExperimentConfig cfg = o.base;
    cfg.awgn.law = PathLossLaw::bounded(4.0);
    cfg.awgn.transmit_power = 1.0;
    cfg.awgn.interferer_power.reset();
    cfg.awgn.fading = FadingMode::rayleigh;
    cfg.awgn.intensity = 1.0;
    cfg.awgn.arena = Region::square(100.0);
    cfg.awgn.near_field_radius = 0.0;
    const std::size_t count = o.trials.value_or(1000);
    cfg.trials = count;
    t.add_assumption("noise column is one N(0, 1) draw per index; interference is the received power");
    const awgn::WillieInterference field(cfg.awgn);
    struct Draw {
        double noise = 0.0;
        double interference = 0.0;
    };
    const auto draws = parallel_trials(count, o.workers, [&](std::size_t i) {
        RandomStream rng = derive_stream(o.seed, i);
        Draw d;
        d.noise = rng.normal();
        d.interference = field.draw(rng);
        return d;
    });
    for (std::size_t i = 0; i < count; ++i) {
        t.add_row({static_cast<double>(i + 1), draws[i].noise, draws[i].interference});
    }
    cfg.seed = o.seed;
    embed(t, cfg);
    t.plot().x = "index";
    t.plot().series = {"interference", "noise"};
    return t;
}

inline ResultTable fig5(const FigureOptions& o) {
    ResultTable t("Fig. 5: Willie's squared samples",
                  {"index", "silent", "transmitting", "alternating", "T_silent", "T_transmitting", "T_alternating"});
    ExperimentConfig cfg = o.base;
    radiometer_manifest(cfg, t);
    cfg.awgn.transmit_power = 1.0;
    cfg.awgn.interferer_power.reset();
    cfg.awgn.d_aw = 1.0;
    cfg.awgn.samples = static_cast<std::uint32_t>(o.trials.value_or(100));
    t.add_assumption("the three traces reuse one random stream");
    const awgn::WillieInterference field(cfg.awgn);
    std::array<awgn::DetectorTrace, 3> traces;
    for (std::size_t m = 0; m < 3; ++m) {
        RandomStream rng = derive_stream(o.seed, 0);
        traces[m] = awgn::simulate_radiometer(cfg.awgn, kModes[m], rng, field);
    }
    for (std::uint32_t i = 0; i < cfg.awgn.samples; ++i) {
        t.add_row({static_cast<double>(i + 1), traces[0].energies[i], traces[1].energies[i], traces[2].energies[i],
                   traces[0].statistic, traces[1].statistic, traces[2].statistic});
    }
    cfg.seed = o.seed;
    embed(t, cfg);
    t.plot().x = "index";
    t.plot().series = {"transmitting", "alternating", "silent", "T_transmitting", "T_alternating", "T_silent"};
    return t;
}

inline std::array<stats::Moments, 3> mode_moments(const awgn::AwgnScenario& s, std::size_t runs,
                                                  const awgn::EmpiricalRun& run) {
    std::array<stats::Moments, 3> out;
    for (std::size_t m = 0; m < 3; ++m) out[m] = stats::moments(awgn::radiometer_statistics(s, kModes[m], runs, run));
    return out;
}

inline ResultTable fig6(const FigureOptions& o) {
    ResultTable t("Fig. 6: transmit power versus Willie's statistic",
                  {"P_t", "mean_silent", "mean_transmitting", "mean_alternating", "sd_silent", "sd_transmitting",
                   "sd_alternating", "gap_to_dispersion"});
    ExperimentConfig cfg = o.base;
    radiometer_manifest(cfg, t);
    cfg.awgn.d_aw = 1.0;
    cfg.awgn.samples = 500;
    cfg.awgn.interferer_power.reset();
    const std::size_t runs = o.trials.value_or(100);
    cfg.trials = runs;
    t.add_assumption("every node, Alice included, transmits at the swept P_t");
    t.add_assumption("all P_t values and modes reuse the same random streams");
    t.add_assumption("gap_to_dispersion = (mean_transmitting - mean_silent) / sqrt((sd_transmitting^2 + sd_silent^2) / 2)");
    const std::vector<double> powers = {1, 2, 5, 10, 20, 50, 100};
    for (double p : powers) {
        awgn::AwgnScenario s = cfg.awgn;
        s.transmit_power = p;
        const auto m = mode_moments(s, runs, {o.seed, o.workers, 0});
        const double sd0 = std::sqrt(m[0].variance), sd1 = std::sqrt(m[1].variance), sd2 = std::sqrt(m[2].variance);
        const double pooled = std::sqrt((m[0].variance + m[1].variance) / 2.0);
        t.add_row({p, m[0].mean, m[1].mean, m[2].mean, sd0, sd1, sd2, (m[1].mean - m[0].mean) / pooled});
    }
    cfg.seed = o.seed;
    embed(t, with_sweep(cfg, "P_t", powers));
    t.plot().x = "P_t";
    t.plot().series = {"mean_transmitting", "mean_alternating", "mean_silent"};
    return t;
}

inline ResultTable fig7(const FigureOptions& o) {
    ResultTable t("Fig. 7: Alice-Willie distance versus Willie's statistic",
                  {"d_aw", "mean_silent", "mean_transmitting", "mean_alternating"});
    ExperimentConfig cfg = o.base;
    radiometer_manifest(cfg, t);
    cfg.awgn.transmit_power = 10.0;
    cfg.awgn.interferer_power.reset();
    cfg.awgn.samples = 500;
    const std::size_t runs = o.trials.value_or(100);
    cfg.trials = runs;
    t.add_assumption("every node transmits at P_t = 10");
    t.add_assumption("distance grid 0.25..4 m in 0.25 m steps; all distances reuse the same random streams");
    const auto distances = range(0.25, 4.0, 0.25);
    for (double d : distances) {
        awgn::AwgnScenario s = cfg.awgn;
        s.d_aw = d;
        const auto m = mode_moments(s, runs, {o.seed, o.workers, 0});
        t.add_row({d, m[0].mean, m[1].mean, m[2].mean});
    }
    cfg.seed = o.seed;
    embed(t, with_sweep(cfg, "d_aw", distances));
    t.plot().x = "d_aw";
    t.plot().series = {"mean_transmitting", "mean_alternating", "mean_silent"};
    return t;
}

inline ResultTable fig8(const FigureOptions& o) {
    ResultTable t("Fig. 8: dispersion of Willie's statistic",
                  {"n", "d_aw", "mode", "q1", "median", "q3", "mean", "iqr"});
    ExperimentConfig cfg = o.base;
    radiometer_manifest(cfg, t);
    cfg.awgn.transmit_power = 10.0;
    cfg.awgn.interferer_power.reset();
    const std::size_t runs = o.trials.value_or(20);
    cfg.trials = runs;
    t.add_assumption("P_t = 10 for every node, carried over from Fig. 7");
    t.add_assumption("mode codes: 0 silent, 1 transmitting, 2 alternating");
    t.add_assumption("each distance has its own random streams, shared by the modes and by both n");
    const auto distances = range(0.5, 4.0, 0.5);
    const std::vector<std::uint32_t> counts = {1000, 3000};
    const auto cells = awgn::iqr_dispersion_sweep(cfg.awgn, kModes, distances, counts, runs, {o.seed, o.workers, 0},
                                                  awgn::StreamSharing::per_distance);
    for (const auto& c : cells) {
        t.add_row({static_cast<double>(c.samples), c.d_aw, static_cast<double>(static_cast<int>(c.mode)), c.quartiles.q1,
                   c.quartiles.median, c.quartiles.q3, c.mean, c.iqr()});
    }
    cfg.seed = o.seed;
    embed(t, with_sweep(cfg, "d_aw", distances));
    t.add_setting("sweep.n", "1000,3000");
    auto& p = t.plot();
    p.kind = PlotSpec::Kind::box;
    p.x = "d_aw";
    p.group = "mode";
    p.panel = "n";
    p.q1 = "q1";
    p.median = "median";
    p.q3 = "q3";
    p.y_label = "T(y)";
    p.group_names = {{0.0, "silent"}, {1.0, "transmitting"}, {2.0, "alternating"}};
    return t;
}

/// One c_s column per series over a theta_W sweep (Figs 9, 10, 11, 14).
template <class Configure>
ResultTable willie_angle_sweep(ResultTable t, const ExperimentConfig& cfg, std::size_t series, Configure&& configure) {
    const auto angles = range(50, 60, 1);
    for (double w : angles) {
        std::vector<double> row = {w};
        for (std::size_t k = 0; k < series; ++k) {
            ExperimentConfig c = cfg;
            c.theta_w_deg = w;
            const thz::WillieAntenna antenna = configure(c, k);
            row.push_back(thz_secrecy(c, antenna));
        }
        t.add_row(std::move(row));
    }
    embed(t, with_sweep(cfg, "theta_w_deg", angles));
    t.plot().x = "theta_w_deg";
    t.plot().y_label = "normalized secrecy capacity";
    for (std::size_t j = 1; j < t.columns().size(); ++j) t.plot().series.push_back(t.columns()[j]);
    return t;
}

inline ResultTable fig9(const FigureOptions& o) {
    const std::vector<double> lambdas = {0.0, 0.001, 0.01, 0.05, 0.1};
    std::vector<std::string> cols = {"theta_w_deg"};
    for (double l : lambdas) cols.push_back("cs_lambda_" + format_number(l));
    ResultTable t("Fig. 9: secrecy versus Willie's angle for several densities", cols);
    ExperimentConfig cfg = o.base;
    cfg.thz.frequency = 500e9;
    cfg.surface.height_std = 0.088e-3;
    thz_manifest(cfg, t);
    t.add_assumption("density set {0, 0.001, 0.01, 0.05, 0.1} per m^2");
    t.add_setting("sweep.lambda", "0,0.001,0.01,0.05,0.1");
    return willie_angle_sweep(std::move(t), cfg, lambdas.size(), [&](ExperimentConfig& c, std::size_t k) {
        c.thz.intensity = lambdas[k];
        return c.willie;
    });
}

inline ResultTable fig10(const FigureOptions& o) {
    const std::vector<double> freqs = {300e9, 500e9, 800e9, 1000e9};
    std::vector<std::string> cols = {"theta_w_deg"};
    for (double f : freqs) cols.push_back("cs_f_" + format_number(f / 1e9) + "GHz");
    ResultTable t("Fig. 10: secrecy versus Willie's angle for several frequencies", cols);
    ExperimentConfig cfg = o.base;
    cfg.thz.intensity = 0.01;
    cfg.surface.height_std = 0.058e-3;
    thz_manifest(cfg, t);
    t.add_assumption("frequency set {300, 500, 800, 1000} GHz");
    t.add_setting("sweep.f", "3e11,5e11,8e11,1e12");
    return willie_angle_sweep(std::move(t), cfg, freqs.size(), [&](ExperimentConfig& c, std::size_t k) {
        c.thz.frequency = freqs[k];
        return c.willie;
    });
}

inline ResultTable fig11(const FigureOptions& o) {
    const auto& rough = roughness_set();
    std::vector<std::string> cols = {"theta_w_deg"};
    for (double s : rough) cols.push_back("cs_sigma_" + mm_label(s));
    ResultTable t("Fig. 11: secrecy versus Willie's angle for several roughnesses", cols);
    ExperimentConfig cfg = o.base;
    cfg.thz.frequency = 500e9;
    cfg.thz.intensity = 0.01;
    thz_manifest(cfg, t);
    t.add_assumption("roughness set {0.038, 0.058, 0.088, 0.118} mm");
    t.add_setting("sweep.sigma_h", "3.8e-05,5.8e-05,8.8e-05,0.000118");
    return willie_angle_sweep(std::move(t), cfg, rough.size(), [&](ExperimentConfig& c, std::size_t k) {
        c.surface.height_std = rough[k];
        return c.willie;
    });
}

inline ResultTable fig12(const FigureOptions& o) {
    const auto& rough = roughness_set();
    const std::vector<double> willie_angles = {52.0, 55.0};
    std::vector<std::string> cols = {"theta_b_deg"};
    for (double w : willie_angles) {
        for (double s : rough) cols.push_back("cs_w" + format_number(w) + "_sigma_" + mm_label(s));
    }
    ResultTable t("Fig. 12: secrecy versus Bob's angle", cols);
    ExperimentConfig cfg = o.base;
    cfg.thz.frequency = 500e9;
    cfg.thz.intensity = 0.01;
    thz_manifest(cfg, t);
    t.add_assumption("roughness set {0.038, 0.058, 0.088, 0.118} mm");
    t.add_setting("sweep.sigma_h", "3.8e-05,5.8e-05,8.8e-05,0.000118");
    t.add_setting("sweep.theta_w_deg", "52,55");
    const auto angles = range(55, 60, 1);
    for (double b : angles) {
        std::vector<double> row = {b};
        for (double w : willie_angles) {
            for (double s : rough) {
                ExperimentConfig c = cfg;
                c.theta_b_deg = b;
                c.theta_w_deg = w;
                c.surface.height_std = s;
                row.push_back(thz_secrecy(c, c.willie));
            }
        }
        t.add_row(std::move(row));
    }
    embed(t, with_sweep(cfg, "theta_b_deg", angles));
    t.plot().x = "theta_b_deg";
    for (std::size_t j = 1; j < t.columns().size(); ++j) t.plot().series.push_back(t.columns()[j]);
    return t;
}

inline ResultTable fig13(const FigureOptions& o) {
    const auto& rough = roughness_set();
    std::vector<std::string> cols = {"theta1_deg"};
    for (double s : rough) cols.push_back("cs_sigma_" + mm_label(s));
    ResultTable t("Fig. 13: secrecy versus incidence angle", cols);
    ExperimentConfig cfg = o.base;
    cfg.thz.frequency = 500e9;
    cfg.thz.intensity = 0.01;
    thz_manifest(cfg, t);
    t.add_assumption("roughness set {0.038, 0.058, 0.088, 0.118} mm");
    t.add_assumption("Bob on the specular direction, Willie 5 deg short of it");
    t.add_setting("sweep.sigma_h", "3.8e-05,5.8e-05,8.8e-05,0.000118");
    const auto angles = range(20, 80, 1);
    for (double a : angles) {
        std::vector<double> row = {a};
        for (double s : rough) {
            ExperimentConfig c = cfg;
            c.theta1_deg = a;
            c.theta_b_deg = a;
            c.theta_w_deg = a - 5.0;
            c.surface.height_std = s;
            row.push_back(thz_secrecy(c, c.willie));
        }
        t.add_row(std::move(row));
    }
    embed(t, with_sweep(cfg, "theta1_deg", angles));
    t.plot().x = "theta1_deg";
    for (std::size_t j = 1; j < t.columns().size(); ++j) t.plot().series.push_back(t.columns()[j]);
    return t;
}

inline ResultTable fig14(const FigureOptions& o) {
    ResultTable t("Fig. 14: secrecy versus Willie's angle for two Willie antennas",
                  {"theta_w_deg", "cs_directional", "cs_omni"});
    ExperimentConfig cfg = o.base;
    cfg.thz.frequency = 800e9;
    cfg.thz.intensity = 0.01;
    cfg.surface.height_std = 0.058e-3;
    thz_manifest(cfg, t);
    t.add_assumption("omni Willie has unit receive gain and sees the whole interferer field");
    t.add_setting("sweep.willie", "directional,omni");
    return willie_angle_sweep(std::move(t), cfg, 2, [](ExperimentConfig&, std::size_t k) {
        return k == 0 ? thz::WillieAntenna::directional : thz::WillieAntenna::omni;
    });
}

}  // namespace figure_detail

/// Builds the table of figure `id`. Unknown ids raise UsageError.
inline ResultTable make_figure(int id, const FigureOptions& options) {
    using namespace figure_detail;
    ResultTable t;
    switch (id) {
        case 3: t = fig3(options); break;
        case 4: t = fig4(options); break;
        case 5: t = fig5(options); break;
        case 6: t = fig6(options); break;
        case 7: t = fig7(options); break;
        case 8: t = fig8(options); break;
        case 9: t = fig9(options); break;
        case 10: t = fig10(options); break;
        case 11: t = fig11(options); break;
        case 12: t = fig12(options); break;
        case 13: t = fig13(options); break;
        case 14: t = fig14(options); break;
        default:
            throw UsageError("unknown figure id " + std::to_string(id) + "; supported ids: " + supported_figures());
    }
    t.stamp(options.seed);
    return t;
}

/// make_figure plus `figN.csv` / `figN.svg` under `out_dir`.
inline ResultTable run_figure(int id, const FigureOptions& options, const std::filesystem::path& out_dir) {
    ResultTable t = make_figure(id, options);
    write_table(t, out_dir, "fig" + std::to_string(id));
    return t;
}

// ---------------------------------------------------------------------------------------------
// Self-test

struct SelfTestCheck {
    std::string name;
    double value = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    bool relative = false;

    bool passed() const {
        const double err = std::abs(value - reference);
        return relative ? err <= tolerance * std::abs(reference) : err <= tolerance;
    }
};

inline std::vector<SelfTestCheck> selftest_checks(std::uint64_t seed, unsigned workers) {
    std::vector<SelfTestCheck> checks;

    checks.push_back({"Ei(-1)", exp_integral_ei(-1.0), -0.21938393439552027368, 1e-12, true});

    // (alpha - d)/(d c_d) (1 + 2 (alpha-d)^2 / ((2 alpha - d) d c_d)) at alpha = 4, d = 2, lambda = 1.
    checks.push_back({"f(1)", taylor_density_factor(1.0, 4.0, 2), (3.0 * kPi + 2.0) / (3.0 * kPi * kPi), 1e-12, true});

    checks.push_back({"P{r1 < 1} at lambda = 1", nearest_interferer_cdf(1.0, 1.0), 0.9568, 5e-5, false});

    {
        thz::ThzScenario s;
        s.intensity = 0.1;
        const auto g = thz::InterferenceGeometry::for_receiver(s, s.directivity);
        const auto closed = thz::thz_interference_stats(g);
        constexpr std::size_t trials = 20000;
        const auto draws = parallel_trials(trials, workers, [&](std::size_t i) {
            RandomStream rng = derive_stream(seed, i);
            return thz::sample_thz_interference(g, rng);
        });
        checks.push_back({"THz interference mean, Monte Carlo / closed form", stats::moments(draws).mean / closed.mean,
                          1.0, 0.05, false});
    }

    {
        const auto terms = thz::kirchhoff_terms(500e9, thz::ScatterSurface::square(0.088e-3, 1.8e-3, 4e-4),
                                                thz::ScatterGeometry::in_plane_degrees(60, 60));
        checks.push_back({"roughness g at 500 GHz, 0.088 mm, 60/60 deg", terms.roughness, 0.8492, 1e-3, false});
    }

    checks.push_back({"covert bits gained by quadrupling n",
                      awgn::covert_bits(4e4, 0.01, 0.05) - awgn::covert_bits(1e4, 0.01, 0.05), 1.0, 1e-12, false});

    {
        const double n = 1000.0, eps = 0.05;
        const double d = awgn::covert_distance(n, 4.0, 1.0, 2, eps);
        checks.push_back({"detection bound at the covert distance", awgn::willie_error_lower_bound(n, d, 4.0, 1.0),
                          0.5 - eps, 1e-12, false});
    }

    {
        RandomStream a = derive_stream(seed, 0), b = derive_stream(seed, 0);
        double equal = 1.0;
        for (int i = 0; i < 1000; ++i) {
            if (a() != b()) equal = 0.0;
        }
        checks.push_back({"derive_stream reproducibility", equal, 1.0, 0.0, false});
    }
    return checks;
}

inline ResultTable selftest_table(std::uint64_t seed, unsigned workers, bool* all_passed = nullptr) {
    ResultTable t("selftest: oracle cross-checks", {"check", "value", "reference", "tolerance", "relative", "pass"});
    const auto checks = selftest_checks(seed, workers);
    bool ok = true;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& c = checks[i];
        t.add_provenance("check " + std::to_string(i + 1), c.name);
        t.add_row({static_cast<double>(i + 1), c.value, c.reference, c.tolerance, c.relative ? 1.0 : 0.0,
                   c.passed() ? 1.0 : 0.0});
        ok = ok && c.passed();
    }
    t.add_setting("run.seed", std::to_string(seed));
    t.add_setting("selftest.thz_trials", "20000");
    t.stamp(seed);
    t.plot().x = "check";
    t.plot().series = {"pass"};
    if (all_passed) *all_passed = ok;
    return t;
}

}  // namespace covert::harness
