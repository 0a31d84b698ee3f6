// covertsim: figure reproduction and scenario evaluation.
//
//   covertsim fig <id>                 write figN.csv / figN.svg
//   covertsim awgn bound|detect|throughput
//   covertsim thz interference|secrecy
//   covertsim selftest
//
// Exit codes: 0 success, 2 usage or configuration error, 3 numeric failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "covert/awgn.hpp"
#include "covert/harness/config.hpp"
#include "covert/harness/figures.hpp"
#include "covert/harness/table.hpp"
#include "covert/scattering.hpp"
#include "covert/stats.hpp"
#include "covert/thz.hpp"
#include "covert/version.hpp"

namespace {

using namespace covert;
using namespace covert::harness;

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct Globals {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<unsigned> workers;
    std::optional<std::string> out;
    std::string config_path;
};

ExperimentConfig load(const Globals& g) {
    ExperimentConfig cfg = g.config_path.empty() ? ExperimentConfig{} : parse_config(g.config_path);
    if (g.seed) cfg.seed = *g.seed;
    if (g.trials) {
        if (*g.trials < 1) throw UsageError("--trials must be >= 1");
        cfg.trials = *g.trials;
    }
    if (g.workers) {
        if (*g.workers < 1) throw UsageError("--workers must be >= 1");
        cfg.workers = *g.workers;
    }
    if (g.out) cfg.out_dir = *g.out;
    return cfg;
}

// One configuration per sweep value, or the configuration itself when no sweep is set.
std::vector<std::pair<double, ExperimentConfig>> sweep_points(const ExperimentConfig& cfg) {
    std::vector<std::pair<double, ExperimentConfig>> out;
    if (!cfg.sweep) {
        out.emplace_back(std::nan(""), cfg);
        return out;
    }
    for (double v : cfg.sweep->values) out.emplace_back(v, with_override(cfg, cfg.sweep->name, format_number(v)));
    return out;
}

std::vector<std::string> with_axis(const ExperimentConfig& cfg, std::vector<std::string> cols) {
    if (cfg.sweep) cols.insert(cols.begin(), cfg.sweep->name);
    return cols;
}

std::vector<double> with_axis(const ExperimentConfig& cfg, double x, std::vector<double> row) {
    if (cfg.sweep) row.insert(row.begin(), x);
    return row;
}

void finish(ResultTable& t, const ExperimentConfig& cfg, const std::string& stem) {
    for (const auto& line : cfg.canonical()) t.add_provenance("config", line);
    t.stamp(cfg.seed);
    if (!t.plot().series.empty() || t.plot().kind != PlotSpec::Kind::line) {
        write_table(t, cfg.out_dir, stem);
    } else {
        write_table(t, cfg.out_dir, stem, false);
    }
    std::cout << t.to_csv();
}

void awgn_bound(const ExperimentConfig& cfg) {
    ResultTable t("awgn bound", with_axis(cfg, {"n", "d_aw", "lambda", "alpha", "willie_error_bound",
                                                "covert_distance", "covert_bits", "bob_error_bound",
                                                "power_threshold"}));
    for (const auto& [x, c] : sweep_points(cfg)) {
        const auto& s = c.awgn;
        const double n = s.samples;
        const double alpha = s.alpha();
        const bool alpha4 = alpha == 4.0;
        t.add_row(with_axis(cfg, x,
                            {n, s.d_aw, s.intensity, alpha, awgn::willie_error_lower_bound(n, s.d_aw, alpha, s.intensity),
                             awgn::covert_distance(n, alpha, s.intensity, 2, c.epsilon),
                             alpha4 ? awgn::covert_bits(n, s.intensity, c.epsilon) : std::nan(""),
                             alpha4 ? awgn::bob_error_upper_bound(n, c.rate, s.intensity) : std::nan(""),
                             awgn::power_condition_threshold(s.intensity, s.noise_bob)}));
    }
    t.add_assumption("bit count and decoding bound exist in closed form only for alpha = 4 (nan otherwise)");
    if (cfg.sweep) {
        t.plot().x = cfg.sweep->name;
        t.plot().series = {"willie_error_bound"};
    }
    finish(t, cfg, "awgn_bound");
}

void awgn_detect(const ExperimentConfig& cfg) {
    ResultTable t("awgn detect", with_axis(cfg, {"n", "d_aw", "P_t", "lambda", "empirical_error", "false_alarm",
                                                 "missed_detection", "threshold", "willie_error_bound"}));
    for (const auto& [x, c] : sweep_points(cfg)) {
        const auto& s = c.awgn;
        const auto o = awgn::willie_error_empirical(s, c.trials, awgn::ThresholdRule::best_on_grid(),
                                                    {c.seed, cfg.workers, 0});
        t.add_row(with_axis(cfg, x,
                            {static_cast<double>(s.samples), s.d_aw, s.transmit_power, s.intensity, o.error(),
                             o.false_alarm, o.missed_detection, o.threshold,
                             awgn::willie_error_lower_bound(s.samples, s.d_aw, s.alpha(), s.intensity)}));
    }
    t.add_assumption("threshold chosen as the best of 256 evenly spaced values between the extreme statistics");
    if (cfg.sweep) {
        t.plot().x = cfg.sweep->name;
        t.plot().series = {"empirical_error", "willie_error_bound"};
    }
    finish(t, cfg, "awgn_detect");
}

void awgn_throughput(const ExperimentConfig& cfg) {
    std::vector<double> ns;
    if (cfg.sweep && cfg.sweep->name == "n") {
        ns = cfg.sweep->values;
    } else {
        for (int e = 0; e <= 12; ++e) ns.push_back(std::pow(10.0, e / 2.0));
    }
    ResultTable t("awgn throughput", {"n", "tau_jammer", "tau_interference"});
    for (double n : ns) {
        t.add_row({n, awgn::spatial_throughput(awgn::ThroughputScheme::jammer, cfg.throughput, n),
                   awgn::spatial_throughput(awgn::ThroughputScheme::interference, cfg.throughput, n)});
    }
    t.add_provenance("crossover-n", format_number(awgn::throughput_crossover(cfg.throughput)));
    t.plot().x = "n";
    t.plot().series = {"tau_jammer", "tau_interference"};
    finish(t, cfg, "awgn_throughput");
}

void thz_interference(const ExperimentConfig& cfg) {
    ResultTable t("thz interference", with_axis(cfg, {"lambda", "mean_closed", "variance_campbell",
                                                      "variance_squared_thinning", "mean_mc", "variance_mc",
                                                      "mean_mc_stderr"}));
    for (const auto& [x, c] : sweep_points(cfg)) {
        const auto g = thz::InterferenceGeometry::for_receiver(c.thz, c.thz.directivity);
        const auto campbell = thz::thz_interference_stats(g, thz::VarianceForm::campbell);
        const auto squared = thz::thz_interference_stats(g, thz::VarianceForm::squared_thinning);
        const auto draws = parallel_trials(c.trials, cfg.workers, [&](std::size_t i) {
            RandomStream rng = derive_stream(c.seed, i);
            return thz::sample_thz_interference(g, rng);
        });
        const auto m = stats::moments(draws);
        t.add_row(with_axis(cfg, x,
                            {c.thz.intensity, campbell.mean, campbell.variance, squared.variance, m.mean, m.variance,
                             m.std_error()}));
    }
    t.add_assumption("receiver at the origin with the scenario's directivity; interferers on the annulus [r_B, R]");
    finish(t, cfg, "thz_interference");
}

void thz_secrecy(const ExperimentConfig& cfg) {
    ResultTable t("thz secrecy", with_axis(cfg, {"gain_bob", "gain_willie", "received_bob", "received_willie", "noise",
                                                 "interference_mean_bob", "interference_mean_willie", "sinr_bob",
                                                 "sinr_willie", "secrecy"}));
    for (const auto& [x, c] : sweep_points(cfg)) {
        const auto r = thz::evaluate_scenario(c.thz, c.surface, c.bob_geometry(), c.willie_geometry(), c.willie,
                                              c.evaluation);
        t.add_row(with_axis(cfg, x,
                            {r.gain_bob, r.gain_willie, r.received_bob, r.received_willie, r.noise,
                             r.interference_bob.mean, r.interference_willie.mean, r.sinr_bob, r.sinr_willie,
                             r.secrecy}));
    }
    if (cfg.sweep) {
        t.plot().x = cfg.sweep->name;
        t.plot().series = {"secrecy"};
    }
    finish(t, cfg, "thz_secrecy");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Covert communication simulator: figure reproduction and scenario evaluation", "covertsim"};
    app.set_version_flag("--version", std::string(covert::kVersion));
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    Globals g;
    app.add_option("--seed", g.seed, "Master random seed");
    app.add_option("--trials", g.trials, "Monte Carlo trials or runs (overrides config and manifests)");
    app.add_option("--workers", g.workers, "Worker threads; results do not depend on this");
    app.add_option("--out", g.out, "Output directory");
    app.add_option("--config", g.config_path, "Configuration file")->check(CLI::ExistingFile);

    int figure_id = 0;
    auto* fig = app.add_subcommand("fig", "Reproduce a figure (ids " + supported_figures() + ")");
    fig->add_option("id", figure_id, "Figure id")->required();

    auto* awgn_cmd = app.add_subcommand("awgn", "AWGN covert-communication analysis");
    awgn_cmd->require_subcommand(1);
    auto* bound = awgn_cmd->add_subcommand("bound", "Detection-error bound, covert distance and bit budget");
    auto* detect = awgn_cmd->add_subcommand("detect", "Empirical radiometer detection error");
    auto* throughput = awgn_cmd->add_subcommand("throughput", "Spatial throughput of both schemes and crossover");

    auto* thz_cmd = app.add_subcommand("thz", "THz-band interference and secrecy");
    thz_cmd->require_subcommand(1);
    auto* interference = thz_cmd->add_subcommand("interference", "Interference moments: closed form and Monte Carlo");
    auto* secrecy = thz_cmd->add_subcommand("secrecy", "Normalized secrecy capacity of one scenario");

    auto* selftest = app.add_subcommand("selftest", "Oracle cross-checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        const ExperimentConfig cfg = load(g);
        if (fig->parsed()) {
            FigureOptions options;
            options.seed = cfg.seed;
            options.trials = g.trials;
            options.workers = cfg.workers;
            options.base = cfg;
            const auto table = run_figure(figure_id, options, cfg.out_dir);
            std::cerr << "wrote " << (std::filesystem::path(cfg.out_dir) / ("fig" + std::to_string(figure_id) + ".csv")).string()
                      << " (" << table.row_count() << " rows)\n";
        } else if (bound->parsed()) {
            awgn_bound(cfg);
        } else if (detect->parsed()) {
            awgn_detect(cfg);
        } else if (throughput->parsed()) {
            awgn_throughput(cfg);
        } else if (interference->parsed()) {
            thz_interference(cfg);
        } else if (secrecy->parsed()) {
            thz_secrecy(cfg);
        } else if (selftest->parsed()) {
            bool ok = false;
            auto t = selftest_table(cfg.seed, cfg.workers, &ok);
            write_table(t, cfg.out_dir, "selftest", false);
            std::cout << t.to_csv();
            if (!ok) {
                std::cerr << "selftest: one or more checks failed\n";
                return kExitNumeric;
            }
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return 0;
}
