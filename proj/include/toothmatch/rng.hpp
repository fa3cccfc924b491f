#pragma once

#include <cstdint>
#include <string_view>

#include "toothmatch/common.hpp"

namespace toothmatch {

// SplitMix64. All randomness in the project flows through this generator so
// that every artifact is reproducible from a single integer seed, regardless
// of platform or standard-library version.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

    Vec3 unit_vector() {
        double z = uniform(-1.0, 1.0);
        double theta = uniform(0.0, 2.0 * 3.14159265358979323846);
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {r * std::cos(theta), r * std::sin(theta), z};
    }

private:
    std::uint64_t state_;
};

// FNV-1a, used to derive per-role seeds and to fingerprint configs.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Independent stream per named role: two tensors drawn from the same master
// seed never share a sequence, and adding tensors does not shift the others.
inline SplitMix64 seeded_stream(std::uint64_t master_seed, std::string_view role) {
    return SplitMix64(master_seed ^ fnv1a64(role));
}

} // namespace toothmatch
