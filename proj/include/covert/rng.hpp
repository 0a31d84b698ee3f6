#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace covert {

inline constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// xoshiro256** generator. Satisfies UniformRandomBitGenerator so it plugs into <random>
/// distributions. One stream is owned by one worker at a time.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed = 0) noexcept {
        std::uint64_t sm = seed;
        for (auto& s : state_) s = splitmix64(sm);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_open_closed() noexcept { return 1.0 - uniform(); }

    /// Unit-mean exponential.
    double exponential() noexcept { return -std::log(uniform_open_closed()); }

    /// Standard normal (Box-Muller, one draw per call so the stream stays stateless).
    double normal() noexcept {
        const double u1 = uniform_open_closed();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    bool bernoulli(double p) noexcept { return uniform() < p; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4]{};
};

/// Independent substream for (seed, stream_id). Same pair gives the same stream regardless
/// of which worker asks for it.
inline RandomStream derive_stream(std::uint64_t seed, std::uint64_t stream_id) noexcept {
    std::uint64_t sm = seed;
    const std::uint64_t a = splitmix64(sm);
    std::uint64_t sm2 = stream_id ^ 0xD1B54A32D192ED03ULL;
    const std::uint64_t b = splitmix64(sm2);
    std::uint64_t mixed = a ^ (b * 0xA24BAED4963EE407ULL);
    return RandomStream(splitmix64(mixed));
}

}  // namespace covert
