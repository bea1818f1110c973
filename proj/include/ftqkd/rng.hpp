#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ftqkd {

// Per-pair random stream: a splitmix64 counter generator whose state is
// derived from (master seed, pair index). Each photon pair draws from its
// own stream in a fixed order, so session results are identical no matter
// how pairs are partitioned across worker threads.
class PairStream {
public:
    PairStream(std::uint64_t master_seed, std::uint64_t pair_index)
        : state_(mix(master_seed ^ mix(pair_index + kGamma))) {}

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix(state_);
    }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Fair coin.
    bool coin() { return (next_u64() >> 63) != 0; }

    /// Standard normal via Box-Muller; consumes exactly two words.
    double normal() {
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double normal(double mean, double sigma) { return mean + sigma * normal(); }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
};

}  // namespace ftqkd
