#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <span>

namespace pqcps::kem {

namespace keccak_detail {

constexpr uint64_t rotl64(uint64_t x, unsigned s) {
    return s == 0 ? x : (x << s) | (x >> (64 - s));
}

// Round constants from the degree-8 LFSR of the Keccak reference.
constexpr std::array<uint64_t, 24> round_constants() {
    std::array<uint64_t, 24> rc{};
    uint8_t lfsr = 0x01;
    for (int round = 0; round < 24; ++round) {
        uint64_t c = 0;
        for (int j = 0; j < 7; ++j) {
            if (lfsr & 1) {
                c |= 1ULL << ((1u << j) - 1);
            }
            bool hi = (lfsr & 0x80) != 0;
            lfsr = static_cast<uint8_t>(lfsr << 1);
            if (hi) {
                lfsr ^= 0x71;
            }
        }
        rc[round] = c;
    }
    return rc;
}

// Rotation offsets, generated by walking (x,y) -> (y, 2x+3y).
constexpr std::array<std::array<unsigned, 5>, 5> rho_offsets() {
    std::array<std::array<unsigned, 5>, 5> r{};
    unsigned x = 1, y = 0;
    for (unsigned t = 0; t < 24; ++t) {
        r[x][y] = ((t + 1) * (t + 2) / 2) % 64;
        unsigned nx = y;
        unsigned ny = (2 * x + 3 * y) % 5;
        x = nx;
        y = ny;
    }
    return r;
}

inline constexpr auto kRC = round_constants();
inline constexpr auto kRho = rho_offsets();

inline void permute(uint64_t* a) {
    for (int round = 0; round < 24; ++round) {
        uint64_t c[5], d[5], b[25];
        for (int x = 0; x < 5; ++x) {
            c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
        }
        for (int x = 0; x < 5; ++x) {
            d[x] = c[(x + 4) % 5] ^ rotl64(c[(x + 1) % 5], 1);
        }
        for (int i = 0; i < 25; ++i) {
            a[i] ^= d[i % 5];
        }
        for (int x = 0; x < 5; ++x) {
            for (int y = 0; y < 5; ++y) {
                b[y + 5 * ((2 * x + 3 * y) % 5)] = rotl64(a[x + 5 * y], kRho[x][y]);
            }
        }
        for (int x = 0; x < 5; ++x) {
            for (int y = 0; y < 5; ++y) {
                a[x + 5 * y] =
                    b[x + 5 * y] ^ (~b[(x + 1) % 5 + 5 * y] & b[(x + 2) % 5 + 5 * y]);
            }
        }
        a[0] ^= kRC[round];
    }
}

} // namespace keccak_detail

/// Keccak[1600] sponge with incremental absorb and squeeze. SHAKE squeezing
/// is open-ended, which the KEM's rejection sampler relies on.
class KeccakSponge {
public:
    KeccakSponge(size_t rate_bytes, uint8_t domain_separator)
        : rate_(rate_bytes), domain_(domain_separator) {
        state_.fill(0);
    }

    void absorb(std::span<const uint8_t> data) {
        for (uint8_t byte : data) {
            xor_byte(pos_++, byte);
            if (pos_ == rate_) {
                keccak_detail::permute(state_.data());
                pos_ = 0;
            }
        }
    }

    void squeeze(std::span<uint8_t> out) {
        if (!squeezing_) {
            pad();
            squeezing_ = true;
            pos_ = rate_; // force a fresh block on first extract
        }
        for (auto& byte : out) {
            if (pos_ == rate_) {
                keccak_detail::permute(state_.data());
                pos_ = 0;
            }
            byte = state_byte(pos_++);
        }
    }

private:
    void pad() {
        xor_byte(pos_, domain_);
        xor_byte(rate_ - 1, 0x80);
    }

    void xor_byte(size_t i, uint8_t v) {
        state_[i / 8] ^= static_cast<uint64_t>(v) << (8 * (i % 8));
    }

    uint8_t state_byte(size_t i) const {
        return static_cast<uint8_t>(state_[i / 8] >> (8 * (i % 8)));
    }

    std::array<uint64_t, 25> state_{};
    size_t rate_;
    uint8_t domain_;
    size_t pos_ = 0;
    bool squeezing_ = false;
};

struct Shake128 : KeccakSponge {
    Shake128() : KeccakSponge(168, 0x1f) {}
};

struct Shake256 : KeccakSponge {
    Shake256() : KeccakSponge(136, 0x1f) {}
};

inline std::array<uint8_t, 32> sha3_256(std::span<const uint8_t> data) {
    KeccakSponge sponge(136, 0x06);
    sponge.absorb(data);
    std::array<uint8_t, 32> out;
    sponge.squeeze(out);
    return out;
}

inline std::array<uint8_t, 64> sha3_512(std::span<const uint8_t> data) {
    KeccakSponge sponge(72, 0x06);
    sponge.absorb(data);
    std::array<uint8_t, 64> out;
    sponge.squeeze(out);
    return out;
}

inline void shake128(std::span<const uint8_t> data, std::span<uint8_t> out) {
    Shake128 sponge;
    sponge.absorb(data);
    sponge.squeeze(out);
}

inline void shake256(std::span<const uint8_t> data, std::span<uint8_t> out) {
    Shake256 sponge;
    sponge.absorb(data);
    sponge.squeeze(out);
}

} // namespace pqcps::kem
