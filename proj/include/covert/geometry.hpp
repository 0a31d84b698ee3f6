#pragma once

// Spatial substrate: arenas, Poisson point fields with fading marks, and path-loss laws.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "covert/error.hpp"
#include "covert/rng.hpp"

namespace covert {

inline constexpr double kPi = 3.14159265358979323846;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(Point a, Point b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

struct Disk {
    double radius = 1.0;
};

struct Square {
    double side = 1.0;
};

/// Simulation arena: a disk or an axis-aligned square around `center`.
class Region {
public:
    using Shape = std::variant<Disk, Square>;

    Region(Shape shape, Point center = {}) : shape_(shape), center_(center) {
        const double extent = std::visit([](auto s) { return extent_of(s); }, shape_);
        if (!(extent > 0.0) || !std::isfinite(extent)) {
            throw ParameterError("region", "radius/side must be positive and finite");
        }
    }

    static Region disk(double radius, Point center = {}) { return Region(Disk{radius}, center); }
    static Region square(double side, Point center = {}) { return Region(Square{side}, center); }

    const Shape& shape() const noexcept { return shape_; }
    Point center() const noexcept { return center_; }
    bool is_disk() const noexcept { return std::holds_alternative<Disk>(shape_); }

    double area() const noexcept {
        if (const auto* d = std::get_if<Disk>(&shape_)) return kPi * d->radius * d->radius;
        const double s = std::get<Square>(shape_).side;
        return s * s;
    }

    bool contains(Point p) const noexcept {
        if (const auto* d = std::get_if<Disk>(&shape_)) return distance(p, center_) <= d->radius;
        const double h = std::get<Square>(shape_).side / 2.0;
        return std::abs(p.x - center_.x) <= h && std::abs(p.y - center_.y) <= h;
    }

    /// Uniform point. Disks use inverse-CDF radius r = R*sqrt(u).
    Point sample_uniform(RandomStream& rng) const noexcept {
        if (const auto* d = std::get_if<Disk>(&shape_)) {
            const double r = d->radius * std::sqrt(rng.uniform());
            const double t = 2.0 * kPi * rng.uniform();
            return {center_.x + r * std::cos(t), center_.y + r * std::sin(t)};
        }
        const double s = std::get<Square>(shape_).side;
        return {center_.x + s * (rng.uniform() - 0.5), center_.y + s * (rng.uniform() - 0.5)};
    }

private:
    static double extent_of(Disk d) { return d.radius; }
    static double extent_of(Square s) { return s.side; }

    Shape shape_;
    Point center_;
};

enum class FadingMode {
    rayleigh,  ///< Psi ~ Exp(1)
    constant,  ///< Psi = 1
};

/// Realization of a PPP. `fading[i]` and `power[i]` are the marks of `points[i]`.
struct PointField {
    std::vector<Point> points;
    std::vector<double> fading;
    std::vector<double> power;

    std::size_t size() const noexcept { return points.size(); }
    bool empty() const noexcept { return points.empty(); }
};

inline double sample_fading_power(RandomStream& rng, FadingMode mode = FadingMode::rayleigh) noexcept {
    return mode == FadingMode::rayleigh ? rng.exponential() : 1.0;
}

inline std::uint64_t sample_poisson(double mean, RandomStream& rng) {
    if (!(mean > 0.0)) return 0;
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(rng);
}

struct PppOptions {
    FadingMode fading = FadingMode::rayleigh;
    double transmit_power = 1.0;
};

/// Visits each point of one PPP realization without materialising the field.
template <class Visitor>
void for_each_ppp_point(const Region& region, double intensity, RandomStream& rng, Visitor&& visit) {
    if (!(intensity >= 0.0) || !std::isfinite(intensity)) {
        throw ParameterError("lambda", "intensity must be finite and >= 0");
    }
    const std::uint64_t count = sample_poisson(intensity * region.area(), rng);
    for (std::uint64_t i = 0; i < count; ++i) visit(region.sample_uniform(rng));
}

inline PointField sample_ppp(const Region& region, double intensity, RandomStream& rng,
                             const PppOptions& options = {}) {
    PointField field;
    for_each_ppp_point(region, intensity, rng, [&](Point p) {
        field.points.push_back(p);
        field.fading.push_back(sample_fading_power(rng, options.fading));
        field.power.push_back(options.transmit_power);
    });
    return field;
}

/// l(r): unbounded r^-a, truncated r^-a * 1{r >= rho}, or bounded min{1, r^-a}.
class PathLossLaw {
public:
    enum class Kind { unbounded, truncated, bounded };

    static PathLossLaw unbounded(double alpha) { return PathLossLaw(Kind::unbounded, alpha, 0.0); }
    static PathLossLaw truncated(double alpha, double guard) { return PathLossLaw(Kind::truncated, alpha, guard); }
    static PathLossLaw bounded(double alpha) { return PathLossLaw(Kind::bounded, alpha, 0.0); }

    Kind kind() const noexcept { return kind_; }
    double alpha() const noexcept { return alpha_; }
    double guard() const noexcept { return guard_; }

    double gain(double r) const {
        if (!(r >= 0.0)) throw DomainError("path_gain: distance must be >= 0");
        switch (kind_) {
            case Kind::unbounded:
                if (r == 0.0) throw SingularityError("path_gain: unbounded law is singular at r = 0");
                return std::pow(r, -alpha_);
            case Kind::truncated:
                return r >= guard_ && r > 0.0 ? std::pow(r, -alpha_) : 0.0;
            case Kind::bounded:
                return r <= 1.0 ? 1.0 : std::pow(r, -alpha_);
        }
        return 0.0;
    }

    std::string describe() const {
        switch (kind_) {
            case Kind::unbounded: return "unbounded(alpha=" + num(alpha_) + ")";
            case Kind::truncated: return "truncated(alpha=" + num(alpha_) + ",rho=" + num(guard_) + ")";
            case Kind::bounded: return "bounded(alpha=" + num(alpha_) + ")";
        }
        return {};
    }

private:
    PathLossLaw(Kind kind, double alpha, double guard) : kind_(kind), alpha_(alpha), guard_(guard) {
        if (!(alpha >= 2.0) || !std::isfinite(alpha)) throw ParameterError("alpha", "path-loss exponent must be >= 2");
        if (!(guard >= 0.0) || !std::isfinite(guard)) throw ParameterError("rho", "guard radius must be >= 0");
    }

    static std::string num(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v);
        return buf;
    }

    Kind kind_;
    double alpha_;
    double guard_;
};

inline double path_gain(const PathLossLaw& law, double r) { return law.gain(r); }

/// P{nearest PPP point within d of the origin} = 1 - exp(-pi lambda d^2).
inline double nearest_interferer_cdf(double intensity, double d) {
    detail::require(intensity >= 0.0, "lambda", "intensity must be >= 0");
    detail::require(d >= 0.0, "d", "distance must be >= 0");
    return -std::expm1(-kPi * intensity * d * d);
}

}  // namespace covert
