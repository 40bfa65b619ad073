#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace pqcps {

/// SplitMix64 generator. Used everywhere a reproducible stream is needed
/// (simulation seeds, mobility waypoints, test inputs). Not a CSPRNG; the
/// KEM takes explicit caller-provided seeds and never draws from this.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() noexcept {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 bits of precision.
    double next_double() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [0, hi).
    double next_double(double hi) noexcept { return next_double() * hi; }

    void fill_bytes(std::span<uint8_t> out) noexcept {
        size_t i = 0;
        while (i < out.size()) {
            uint64_t w = next();
            for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
                out[i] = static_cast<uint8_t>(w >> (8 * b));
            }
        }
    }

private:
    uint64_t state_;
};

/// Derives an independent child seed from (master, tag, index). Stable
/// across runs and platforms, so documented transcripts stay reproducible.
inline uint64_t derive_seed(uint64_t master, std::string_view tag, uint64_t index = 0) {
    uint64_t h = 0xcbf29ce484222325ULL ^ master;
    auto mix = [&h](uint64_t v) {
        h ^= v;
        h *= 0x100000001b3ULL;
        h ^= h >> 29;
    };
    for (char c : tag) {
        mix(static_cast<uint8_t>(c));
    }
    mix(index + 1);
    return SplitMix64(h).next();
}

} // namespace pqcps
