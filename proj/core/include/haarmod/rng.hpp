#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace haarmod {

/// Deterministic, splittable random stream over splitmix64.
///
/// Reproducibility contract: the draw sequence is a pure function of
/// (seed, rng_version()). Child streams are a pure function of the parent
/// seed and the split label, independent of the parent's position. Any
/// change to the generator or the split rule is a breaking bump of
/// rng_version().
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t next_u64() {
        ++position_;
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound), rejection against the largest multiple of
    /// bound below 2^64; no modulo bias. A bound of 1 consumes no draw.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t residue = (0ull - bound) % bound;  // 2^64 mod bound
        const std::uint64_t accept_max = ~std::uint64_t{0} - residue;
        std::uint64_t z;
        do {
            z = next_u64();
        } while (z > accept_max);
        return z % bound;
    }

    /// Child stream derived from (seed, label); parent state is untouched.
    RngStream split(std::string_view label) const {
        return RngStream(mix(mix(seed_) ^ fnv1a(label)));
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t position() const { return position_; }

    static std::string version() { return "splitmix64/fnv1a-split/1"; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xCBF29CE484222325ull;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001B3ull;
        }
        return h;
    }

    std::uint64_t seed_;
    std::uint64_t state_;
    std::uint64_t position_ = 0;
};

}  // namespace haarmod
