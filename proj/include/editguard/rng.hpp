#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

// Deterministic random number generation. All randomized components
// (bootstrap sampling, feature subsampling, fold shuffling) draw from Rng
// so results are identical across platforms and thread counts. Streams are
// derived from a root seed with splitmix64, which lets each parallel unit
// (e.g. each forest tree) own an independent counter-based stream.

namespace editguard {

constexpr uint64_t splitmix64(uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    // Derives the i-th substream of a root seed.
    static Rng stream(uint64_t seed, uint64_t index) {
        uint64_t sm = seed;
        uint64_t a = splitmix64(sm);
        sm = a ^ (index * 0xD1B54A32D192ED03ULL + 0x8BB84B93962EACC9ULL);
        return Rng(splitmix64(sm));
    }

    // xoshiro256**
    uint64_t next_u64() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, n). Rejection sampling keeps it unbiased.
    uint64_t next_below(uint64_t n) {
        if (n <= 1) return 0;
        const uint64_t limit = ~uint64_t{0} - ~uint64_t{0} % n;
        uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Normal via Box-Muller (used only by tests and the benchmark).
    double next_gaussian() {
        double u1 = next_double();
        double u2 = next_double();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            using std::swap;
            swap(v[i - 1], v[j]);
        }
    }

private:
    static constexpr uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

}  // namespace editguard
