#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

#include "warpfib/common.hpp"

namespace warpfib {

/// Deterministic 64-bit RNG (xoshiro256++ seeded via splitmix64).
///
/// The standard <random> distributions are implementation-defined, which would
/// break the byte-identical reproducibility contract across toolchains, so the
/// uniform/normal mappings are spelled out here.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& w : s_) w = splitmix64(x);
    }

    /// Derive an independent, reproducible stream for a named purpose.
    Rng stream(std::string_view tag, uint64_t index = 0) const {
        uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a over tag bytes
        for (char c : tag) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ull;
        }
        uint64_t x = s_[0] ^ h;
        x = splitmix64(x) ^ (index * 0x9e3779b97f4a7c15ull);
        return Rng(splitmix64(x));
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (no cached spare, for stream clarity).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    double normal(double mean, double sigma) { return mean + sigma * normal(); }

    /// Uniform integer in [0, n).
    uint64_t uniform_index(uint64_t n) {
        // Rejection-free is fine here: n is tiny relative to 2^64.
        return next_u64() % n;
    }

    Vec3 uniform_in_box(const Box3& box) {
        return {uniform(box.lo.x(), box.hi.x()), uniform(box.lo.y(), box.hi.y()),
                uniform(box.lo.z(), box.hi.z())};
    }

private:
    static uint64_t splitmix64(uint64_t& x) {
        x += 0x9e3779b97f4a7c15ull;
        uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t s_[4];
};

}  // namespace warpfib
