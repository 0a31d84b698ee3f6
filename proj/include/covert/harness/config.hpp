#pragma once

// Experiment configuration: flat `key = value` sections, one per module.
//
//   [run]       seed, trials, workers, out
//   [awgn]      P_t, P_i, alpha, law, rho, lambda, d_aw, d_ab, sigma2_w0, sigma2_b0, n, p,
//               arena, arena_size, fading, refresh, near_field_radius, epsilon, rate
//   [throughput] lambda, xi, d_ab, alpha, c
//   [thz]       f, phi_deg, r_B, R, K, lambda, H, T, bandwidth, d_ab, d_aw, variance
//   [surface]   sigma_h, l_c, area
//   [geometry]  theta1_deg, theta_b_deg, theta_w_deg, theta3_deg
//   [secrecy]   convention, clamp, willie
//   [sweep]     axis, values
//
// SI units throughout (Hz, m, m^2, W, K) except the *_deg angles. `#` and `;` start comments.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "covert/awgn.hpp"
#include "covert/error.hpp"
#include "covert/scattering.hpp"
#include "covert/thz.hpp"

namespace covert::harness {

/// Configuration problem tied to a key and, when known, a line of the source file.
class ConfigError : public ParameterError {
public:
    ConfigError(std::string key, int line, const std::string& what, const std::string& source = "<config>")
        : ParameterError(Verbatim{}, key, format(source, line, key, what)), line_(line), detail_(what) {}
    int line() const noexcept { return line_; }
    /// Message without the location prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    static std::string format(const std::string& source, int line, const std::string& key, const std::string& what) {
        return source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + key + ": " + what;
    }

    int line_;
    std::string detail_;
};



struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

struct ExperimentConfig {
    // [run]
    std::uint64_t seed = 1;
    std::size_t trials = 1000;
    unsigned workers = 1;
    std::string out_dir = ".";

    // [awgn]
    awgn::AwgnScenario awgn;
    double epsilon = 0.05;  // covertness slack for the covert distance and bit count
    double rate = 0.0;      // R, bits per channel use, for Bob's decoding bound

    awgn::ThroughputParams throughput;

    // [thz], [surface], [geometry], [secrecy]
    thz::ThzScenario thz;
    thz::ScatterSurface surface = thz::ScatterSurface::square(0.088e-3, 1.8e-3, 4e-4);
    double theta1_deg = 60.0;
    double theta_b_deg = 60.0;
    double theta_w_deg = 55.0;
    double theta3_deg = 0.0;
    thz::WillieAntenna willie = thz::WillieAntenna::directional;
    thz::EvaluationOptions evaluation;

    std::optional<SweepAxis> sweep;

    thz::ScatterGeometry bob_geometry() const {
        return {theta1_deg * kPi / 180.0, theta_b_deg * kPi / 180.0, theta3_deg * kPi / 180.0};
    }
    thz::ScatterGeometry willie_geometry() const {
        return {theta1_deg * kPi / 180.0, theta_w_deg * kPi / 180.0, theta3_deg * kPi / 180.0};
    }

    /// Every effective setting as sorted `section.key=value` lines.
    std::vector<std::string> canonical() const;

    /// FNV-1a 64 of the canonical lines.
    std::uint64_t hash() const;
};

inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace config_detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& key, int line, const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        throw ConfigError(key, line, "expected a finite number, got '" + text + "'");
    }
    return v;
}

inline std::uint64_t parse_unsigned(const std::string& key, int line, const std::string& text) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError(key, line, "expected a non-negative integer, got '" + text + "'");
    }
    return v;
}

inline bool parse_bool(const std::string& key, int line, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError(key, line, "expected true or false, got '" + text + "'");
}

template <class Enum>
Enum parse_choice(const std::string& key, int line, const std::string& text,
                  std::initializer_list<std::pair<const char*, Enum>> choices) {
    std::string names;
    for (const auto& [name, value] : choices) {
        if (text == name) return value;
        names += names.empty() ? name : std::string(", ") + name;
    }
    throw ConfigError(key, line, "expected one of {" + names + "}, got '" + text + "'");
}

// Path-loss and arena settings are collected first and assembled once the file is read.
struct AwgnShape {
    double alpha = 4.0;
    std::string law = "bounded";
    double rho = 1.0;
    std::string arena = "square";
    double arena_size = 100.0;
    double sigma_h = 0.088e-3;
    double l_c = 1.8e-3;
    double area = 4e-4;
};

struct Field {
    std::function<void(ExperimentConfig&, AwgnShape&, const std::string&, int)> set;
    std::function<std::string(const ExperimentConfig&, const AwgnShape&)> get;
};

inline std::string law_name(const PathLossLaw& law) {
    switch (law.kind()) {
        case PathLossLaw::Kind::unbounded: return "unbounded";
        case PathLossLaw::Kind::truncated: return "truncated";
        case PathLossLaw::Kind::bounded: return "bounded";
    }
    return "bounded";
}

inline AwgnShape shape_of(const ExperimentConfig& c) {
    AwgnShape s;
    s.alpha = c.awgn.law.alpha();
    s.law = law_name(c.awgn.law);
    s.rho = c.awgn.law.kind() == PathLossLaw::Kind::truncated ? c.awgn.law.guard() : 1.0;
    s.arena = c.awgn.arena.is_disk() ? "disk" : "square";
    s.arena_size = c.awgn.arena.is_disk() ? std::get<Disk>(c.awgn.arena.shape()).radius
                                          : std::get<Square>(c.awgn.arena.shape()).side;
    s.sigma_h = c.surface.height_std;
    s.l_c = c.surface.correlation_length;
    s.area = c.surface.area();
    return s;
}

#define COVERT_NUM_FIELD(expr, convert)                                                              \
    Field {                                                                                          \
        [](ExperimentConfig& c, AwgnShape& sh, const std::string& v, int line) {                     \
            (void)c; (void)sh;                                                                       \
            expr = convert;                                                                          \
        },                                                                                           \
            [](const ExperimentConfig& c, const AwgnShape& sh) {                                     \
                (void)c; (void)sh;                                                                   \
                return format_number(static_cast<double>(expr));                                     \
            }                                                                                        \
    }

inline const std::map<std::string, Field>& fields() {
    static const std::map<std::string, Field> table = [] {
        std::map<std::string, Field> f;
        f["run.seed"] = {[](ExperimentConfig& c, AwgnShape&, const std::string& v, int line) {
                             c.seed = parse_unsigned("seed", line, v);
                         },
                         [](const ExperimentConfig& c, const AwgnShape&) { return std::to_string(c.seed); }};
        f["run.trials"] = {[](ExperimentConfig& c, AwgnShape&, const std::string& v, int line) {
                               c.trials = parse_unsigned("trials", line, v);
                           },
                           [](const ExperimentConfig& c, const AwgnShape&) { return std::to_string(c.trials); }};
        f["run.workers"] = {[](ExperimentConfig& c, AwgnShape&, const std::string& v, int line) {
                                c.workers = static_cast<unsigned>(parse_unsigned("workers", line, v));
                            },
                            [](const ExperimentConfig& c, const AwgnShape&) { return std::to_string(c.workers); }};
        f["run.out"] = {[](ExperimentConfig& c, AwgnShape&, const std::string& v, int) { c.out_dir = v; },
                        [](const ExperimentConfig& c, const AwgnShape&) { return c.out_dir; }};

        f["awgn.P_t"] = COVERT_NUM_FIELD(c.awgn.transmit_power, parse_double("P_t", line, v));
        // `P_t` (the default) ties interferer power to Alice's.
        f["awgn.P_i"] = {[](ExperimentConfig& c, AwgnShape&, const std::string& v, int line) {
                             if (v == "P_t") c.awgn.interferer_power.reset();
                             else c.awgn.interferer_power = parse_double("P_i", line, v);
                         },
                         [](const ExperimentConfig& c, const AwgnShape&) {
                             return c.awgn.interferer_power ? format_number(*c.awgn.interferer_power)
                                                            : std::string("P_t");
                         }};
        f["awgn.alpha"] = COVERT_NUM_FIELD(sh.alpha, parse_double("alpha", line, v));
        f["awgn.rho"] = COVERT_NUM_FIELD(sh.rho, parse_double("rho", line, v));
        f["awgn.law"] = {[](ExperimentConfig&, AwgnShape& sh, const std::string& v, int line) {
                             sh.law = parse_choice<std::string>("law", line, v,
                                                                {{"bounded", "bounded"},
                                                                 {"truncated", "truncated"},
                                                                 {"unbounded", "unbounded"}});
                         },
                         [](const ExperimentConfig&, const AwgnShape& sh) { return sh.law; }};
        f["awgn.arena"] = {[](ExperimentConfig&, AwgnShape& sh, const std::string& v, int line) {
                               sh.arena = parse_choice<std::string>("arena", line, v,
                                                                    {{"square", "square"}, {"disk", "disk"}});
                           },
                           [](const ExperimentConfig&, const AwgnShape& sh) { return sh.arena; }};
        f["awgn.arena_size"] = COVERT_NUM_FIELD(sh.arena_size, parse_double("arena_size", line, v));
        f["awgn.lambda"] = COVERT_NUM_FIELD(c.awgn.intensity, parse_double("lambda", line, v));
        f["awgn.d_aw"] = COVERT_NUM_FIELD(c.awgn.d_aw, parse_double("d_aw", line, v));
        f["awgn.d_ab"] = COVERT_NUM_FIELD(c.awgn.d_ab, parse_double("d_ab", line, v));
        f["awgn.sigma2_w0"] = COVERT_NUM_FIELD(c.awgn.noise_willie, parse_double("sigma2_w0", line, v));
        f["awgn.sigma2_b0"] = COVERT_NUM_FIELD(c.awgn.noise_bob, parse_double("sigma2_b0", line, v));
        f["awgn.n"] = COVERT_NUM_FIELD(c.awgn.samples, static_cast<std::uint32_t>(parse_unsigned("n", line, v)));
        f["awgn.p"] = COVERT_NUM_FIELD(c.awgn.transmit_prob, parse_double("p", line, v));
        f["awgn.near_field_radius"] =
            COVERT_NUM_FIELD(c.awgn.near_field_radius, parse_double("near_field_radius", line, v));
        f["awgn.epsilon"] = COVERT_NUM_FIELD(c.epsilon, parse_double("epsilon", line, v));
        f["awgn.rate"] = COVERT_NUM_FIELD(c.rate, parse_double("rate", line, v));
        f["awgn.fading"] = {[](ExperimentConfig& c, AwgnShape&, const std::string& v, int line) {
                                c.awgn.fading = parse_choice<FadingMode>("fading", line, v,
                                                             {{"rayleigh", FadingMode::rayleigh},
                                                              {"constant", FadingMode::constant}});
                            },
                            [](const ExperimentConfig& c, const AwgnShape&) {
                                return std::string(c.awgn.fading == FadingMode::rayleigh ? "rayleigh" : "constant");
                            }};
        f["awgn.refresh"] = {[](ExperimentConfig& c, AwgnShape&, const std::string& v, int line) {
                                 c.awgn.refresh = parse_choice<awgn::FieldRefresh>("refresh", line, v,
                                                               {{"per_trace", awgn::FieldRefresh::per_trace},
                                                                {"per_sample", awgn::FieldRefresh::per_sample}});
                             },
                             [](const ExperimentConfig& c, const AwgnShape&) {
                                 return std::string(c.awgn.refresh == awgn::FieldRefresh::per_trace ? "per_trace"
                                                                                                    : "per_sample");
                             }};

        f["throughput.lambda"] = COVERT_NUM_FIELD(c.throughput.intensity, parse_double("lambda", line, v));
        f["throughput.xi"] = COVERT_NUM_FIELD(c.throughput.sinr_threshold, parse_double("xi", line, v));
        f["throughput.d_ab"] = COVERT_NUM_FIELD(c.throughput.d_ab, parse_double("d_ab", line, v));
        f["throughput.alpha"] = COVERT_NUM_FIELD(c.throughput.alpha, parse_double("alpha", line, v));
        f["throughput.c"] = COVERT_NUM_FIELD(c.throughput.jammer_constant, parse_double("c", line, v));

        f["thz.f"] = COVERT_NUM_FIELD(c.thz.frequency, parse_double("f", line, v));
        f["thz.phi_deg"] = {[](ExperimentConfig& c, AwgnShape&, const std::string& v, int line) {
                                c.thz.directivity = parse_double("phi", line, v) * kPi / 180.0;
                            },
                            [](const ExperimentConfig& c, const AwgnShape&) {
                                return format_number(c.thz.directivity * 180.0 / kPi);
                            }};
        f["thz.r_B"] = COVERT_NUM_FIELD(c.thz.blocker_radius, parse_double("r_B", line, v));
        f["thz.R"] = COVERT_NUM_FIELD(c.thz.horizon, parse_double("R", line, v));
        f["thz.K"] = COVERT_NUM_FIELD(c.thz.absorption, parse_double("K", line, v));
        f["thz.lambda"] = COVERT_NUM_FIELD(c.thz.intensity, parse_double("lambda", line, v));
        f["thz.H"] = COVERT_NUM_FIELD(c.thz.link_constant, parse_double("H", line, v));
        f["thz.T"] = COVERT_NUM_FIELD(c.thz.temperature, parse_double("T", line, v));
        f["thz.bandwidth"] = COVERT_NUM_FIELD(c.thz.noise_bandwidth, parse_double("bandwidth", line, v));
        f["thz.d_ab"] = COVERT_NUM_FIELD(c.thz.d_ab, parse_double("d_ab", line, v));
        f["thz.d_aw"] = COVERT_NUM_FIELD(c.thz.d_aw, parse_double("d_aw", line, v));
        f["thz.variance"] = {[](ExperimentConfig& c, AwgnShape&, const std::string& v, int line) {
                                 c.evaluation.variance =
                                     parse_choice<thz::VarianceForm>("variance", line, v,
                                                  {{"campbell", thz::VarianceForm::campbell},
                                                   {"squared_thinning", thz::VarianceForm::squared_thinning}});
                             },
                             [](const ExperimentConfig& c, const AwgnShape&) {
                                 return std::string(c.evaluation.variance == thz::VarianceForm::campbell
                                                        ? "campbell"
                                                        : "squared_thinning");
                             }};

        f["surface.sigma_h"] = COVERT_NUM_FIELD(sh.sigma_h, parse_double("sigma_h", line, v));
        f["surface.l_c"] = COVERT_NUM_FIELD(sh.l_c, parse_double("l_c", line, v));
        f["surface.area"] = COVERT_NUM_FIELD(sh.area, parse_double("area", line, v));

        f["geometry.theta1_deg"] = COVERT_NUM_FIELD(c.theta1_deg, parse_double("theta1", line, v));
        f["geometry.theta_b_deg"] = COVERT_NUM_FIELD(c.theta_b_deg, parse_double("theta_b", line, v));
        f["geometry.theta_w_deg"] = COVERT_NUM_FIELD(c.theta_w_deg, parse_double("theta_w", line, v));
        f["geometry.theta3_deg"] = COVERT_NUM_FIELD(c.theta3_deg, parse_double("theta3", line, v));

        f["secrecy.convention"] = {[](ExperimentConfig& c, AwgnShape&, const std::string& v, int line) {
                                       c.evaluation.convention = parse_choice<thz::SecrecyConvention>(
                                           "convention", line, v,
                                           {{"as_printed", thz::SecrecyConvention::as_printed},
                                            {"log_one_plus", thz::SecrecyConvention::log_one_plus}});
                                   },
                                   [](const ExperimentConfig& c, const AwgnShape&) {
                                       return std::string(c.evaluation.convention == thz::SecrecyConvention::as_printed
                                                              ? "as_printed"
                                                              : "log_one_plus");
                                   }};
        f["secrecy.clamp"] = {[](ExperimentConfig& c, AwgnShape&, const std::string& v, int line) {
                                  c.evaluation.clamp = parse_bool("clamp", line, v);
                              },
                              [](const ExperimentConfig& c, const AwgnShape&) {
                                  return std::string(c.evaluation.clamp ? "true" : "false");
                              }};
        f["secrecy.willie"] = {[](ExperimentConfig& c, AwgnShape&, const std::string& v, int line) {
                                   c.willie = parse_choice<thz::WillieAntenna>("willie", line, v,
                                                           {{"directional", thz::WillieAntenna::directional},
                                                            {"omni", thz::WillieAntenna::omni}});
                               },
                               [](const ExperimentConfig& c, const AwgnShape&) {
                                   return std::string(c.willie == thz::WillieAntenna::omni ? "omni" : "directional");
                               }};

        f["sweep.axis"] = {[](ExperimentConfig& c, AwgnShape&, const std::string& v, int line) {
                               if (v.empty()) throw ConfigError("axis", line, "sweep axis name is empty");
                               if (!c.sweep) c.sweep.emplace();
                               c.sweep->name = v;
                           },
                           [](const ExperimentConfig& c, const AwgnShape&) {
                               return c.sweep ? c.sweep->name : std::string();
                           }};
        f["sweep.values"] = {[](ExperimentConfig& c, AwgnShape&, const std::string& v, int line) {
                                 if (!c.sweep) c.sweep.emplace();
                                 c.sweep->values.clear();
                                 std::stringstream ss(v);
                                 std::string item;
                                 while (std::getline(ss, item, ',')) {
                                     c.sweep->values.push_back(parse_double("values", line, trim(item)));
                                 }
                             },
                             [](const ExperimentConfig& c, const AwgnShape&) {
                                 std::string out;
                                 if (c.sweep) {
                                     for (double x : c.sweep->values) {
                                         if (!out.empty()) out += ',';
                                         out += format_number(x);
                                     }
                                 }
                                 return out;
                             }};
        return f;
    }();
    return table;
}

#undef COVERT_NUM_FIELD

}  // namespace config_detail

inline std::vector<std::string> ExperimentConfig::canonical() const {
    const auto shape = config_detail::shape_of(*this);
    std::vector<std::string> lines;
    for (const auto& [name, field] : config_detail::fields()) {
        if (name.rfind("sweep.", 0) == 0 && !sweep) continue;
        if (name == "run.workers" || name == "run.out") continue;  // do not affect results
        lines.push_back(name + "=" + field.get(*this, shape));
    }
    return lines;
}

inline std::uint64_t ExperimentConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& line : canonical()) {
        h = fnv1a64(line, h);
        h = fnv1a64("\n", h);
    }
    return h;
}

/// Parses configuration text. `source` names the input in diagnostics.
inline ExperimentConfig parse_config_text(std::string_view text, const std::string& source = "<config>") {
    using namespace config_detail;
    ExperimentConfig cfg;
    AwgnShape shape;
    std::map<std::string, int> seen;  // full key -> line
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    auto fail = [&](const std::string& key, int line, const std::string& what) -> ConfigError {
        return ConfigError(key, line, what, source);
    };
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string line = std::string(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) {
            if (eol == text.size()) break;
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') throw fail("section", line_no, "unterminated section header");
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            static const char* known[] = {"run", "awgn", "throughput", "thz", "surface", "geometry", "secrecy", "sweep"};
            if (std::find(std::begin(known), std::end(known), section) == std::end(known)) {
                throw fail(section, line_no, "unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw fail(line, line_no, "expected key = value");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (section.empty()) throw fail(key, line_no, "key outside of any section");
        const std::string full = section + "." + key;
        const auto it = fields().find(full);
        if (it == fields().end()) throw fail(key, line_no, "unknown key '" + key + "' in [" + section + "]");
        if (const auto prev = seen.find(full); prev != seen.end()) {
            throw fail(key, line_no, "duplicate key '" + key + "' (first set on line " + std::to_string(prev->second) + ")");
        }
        seen[full] = line_no;
        try {
            it->second.set(cfg, shape, value, line_no);
        } catch (const ConfigError& e) {
            throw fail(e.key(), line_no, e.detail());
        }
        if (eol == text.size()) break;
    }

    auto line_of = [&](const std::string& section_name, const std::string& key) {
        const auto found = seen.find(section_name + "." + key);
        return found == seen.end() ? 0 : found->second;
    };
    auto guarded = [&](const std::string& section_name, auto&& fn) {
        try {
            fn();
        } catch (const ParameterError& e) {
            std::string what = e.what();
            if (what.rfind(e.key() + ": ", 0) == 0) what.erase(0, e.key().size() + 2);
            throw ConfigError(e.key(), line_of(section_name, e.key()), what, source);
        }
    };

    guarded("awgn", [&] {
        if (shape.law == "bounded") cfg.awgn.law = PathLossLaw::bounded(shape.alpha);
        else if (shape.law == "truncated") cfg.awgn.law = PathLossLaw::truncated(shape.alpha, shape.rho);
        else cfg.awgn.law = PathLossLaw::unbounded(shape.alpha);
        if (!(shape.arena_size > 0.0)) throw ParameterError("arena_size", "must be > 0");
        cfg.awgn.arena = shape.arena == "disk" ? Region::disk(shape.arena_size) : Region::square(shape.arena_size);
        cfg.awgn.validate();
        if (!(cfg.epsilon > 0.0 && cfg.epsilon < 0.5)) throw ParameterError("epsilon", "must lie in (0, 1/2)");
        if (!(cfg.rate >= 0.0)) throw ParameterError("rate", "must be >= 0");
    });
    guarded("throughput", [&] {
        const auto& t = cfg.throughput;
        detail::require(t.intensity > 0.0, "lambda", "must be > 0");
        detail::require(t.sinr_threshold > 0.0, "xi", "must be > 0");
        detail::require(t.d_ab > 0.0, "d_ab", "must be > 0");
        detail::require(t.alpha > 2.0, "alpha", "must be > 2");
        detail::require(t.jammer_constant > 0.0, "c", "must be > 0");
    });
    guarded("thz", [&] { cfg.thz.validate(); });
    guarded("surface", [&] {
        cfg.surface = thz::ScatterSurface::square(shape.sigma_h, shape.l_c, shape.area);
        cfg.surface.validate();
    });
    guarded("geometry", [&] {
        detail::require(cfg.theta1_deg >= 0.0 && cfg.theta1_deg < 90.0, "theta1_deg", "must lie in [0, 90)");
        detail::require(cfg.theta_b_deg >= 0.0 && cfg.theta_b_deg <= 90.0, "theta_b_deg", "must lie in [0, 90]");
        detail::require(cfg.theta_w_deg >= 0.0 && cfg.theta_w_deg <= 90.0, "theta_w_deg", "must lie in [0, 90]");
        detail::require(cfg.theta3_deg >= 0.0 && cfg.theta3_deg < 360.0, "theta3_deg", "must lie in [0, 360)");
    });
    guarded("run", [&] {
        detail::require(cfg.trials >= 1, "trials", "must be >= 1");
        detail::require(cfg.workers >= 1, "workers", "must be >= 1");
    });
    if (cfg.sweep) {
        guarded("sweep", [&] {
            detail::require(!cfg.sweep->name.empty(), "axis", "sweep needs an axis name");
            detail::require(!cfg.sweep->values.empty(), "values", "sweep needs at least one value");
        });
    }
    return cfg;
}

inline ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config", 0, "cannot open file", path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

/// Copy of `cfg` with one `section.key` replaced, validated as if it came from a file.
inline ExperimentConfig with_override(const ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (config_detail::fields().count(key) == 0 || key.rfind("sweep.", 0) == 0) {
        throw ConfigError(key, 0, "cannot sweep over '" + key + "'");
    }
    std::map<std::string, std::vector<std::string>> sections;
    for (const auto& line : cfg.canonical()) {
        const auto eq = line.find('=');
        const std::string name = line.substr(0, eq);
        if (name == key || name.rfind("sweep.", 0) == 0) continue;
        const auto dot = name.find('.');
        sections[name.substr(0, dot)].push_back(name.substr(dot + 1) + " = " + line.substr(eq + 1));
    }
    const auto dot = key.find('.');
    sections[key.substr(0, dot)].push_back(key.substr(dot + 1) + " = " + value);
    std::string text;
    for (const auto& [section, lines] : sections) {
        text += "[" + section + "]\n";
        for (const auto& l : lines) text += l + "\n";
    }
    ExperimentConfig out = parse_config_text(text, "<sweep " + key + "=" + value + ">");
    out.workers = cfg.workers;
    out.out_dir = cfg.out_dir;
    return out;
}

}  // namespace covert::harness
