#pragma once

#include <cstdint>

namespace oddball {

// Named RNG streams derived from one master seed. Each consumer gets its
// own stream so changing one never perturbs another.
enum class RngStream : std::uint64_t {
    weight_init = 0,
    traditional_shuffle = 1,
    oddball_sample = 2,
    synthetic_data = 3,
};

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += kSplitMixGamma;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Child seed = (stream+1)-th output of a SplitMix64 sequence seeded by master.
inline std::uint64_t derive_seed(std::uint64_t master, RngStream stream) {
    std::uint64_t s = master;
    std::uint64_t out = 0;
    for (std::uint64_t i = 0; i <= static_cast<std::uint64_t>(stream); ++i)
        out = splitmix64(s);
    return out;
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return derive_seed(master, static_cast<RngStream>(stream));
}

// xoshiro256** (Blackman & Vigna), seeded via SplitMix64. Self-contained so
// sequences are identical on every platform and toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) word = splitmix64(s);
    }

    std::uint64_t next_u64() {
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

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased integer in [0, n) via rejection sampling.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        std::uint64_t r;
        do {
            r = next_u64();
        } while (r < threshold);
        return r % n;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace oddball
