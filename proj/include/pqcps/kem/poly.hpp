#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "pqcps/kem/keccak.hpp"
#include "pqcps/kem/params.hpp"

namespace pqcps::kem {

inline constexpr int kN = 256;
inline constexpr int kQ = 3329;
inline constexpr int kZeta = 17; // primitive 256th root of unity mod q

/// Ring element of Z_q[X]/(X^256+1); coefficients kept canonical in [0, q).
using Poly = std::array<int16_t, kN>;
using PolyVec = std::vector<Poly>;

namespace poly_detail {

constexpr int16_t pow_mod(int base, int exp) {
    int64_t result = 1, b = base % kQ;
    while (exp > 0) {
        if (exp & 1) {
            result = result * b % kQ;
        }
        b = b * b % kQ;
        exp >>= 1;
    }
    return static_cast<int16_t>(result);
}

constexpr unsigned bitrev7(unsigned v) {
    unsigned r = 0;
    for (int bit = 0; bit < 7; ++bit) {
        r = (r << 1) | ((v >> bit) & 1);
    }
    return r;
}

// zeta^BitRev7(i), consumed in order by the layered NTT butterflies.
constexpr std::array<int16_t, 128> ntt_zetas() {
    std::array<int16_t, 128> z{};
    for (unsigned i = 0; i < 128; ++i) {
        z[i] = pow_mod(kZeta, static_cast<int>(bitrev7(i)));
    }
    return z;
}

// zeta^(2*BitRev7(i)+1), the X^2 - gamma moduli of the 128 base rings.
constexpr std::array<int16_t, 128> basemul_gammas() {
    std::array<int16_t, 128> g{};
    for (unsigned i = 0; i < 128; ++i) {
        g[i] = pow_mod(kZeta, static_cast<int>(2 * bitrev7(i) + 1));
    }
    return g;
}

inline constexpr auto kZetas = ntt_zetas();
inline constexpr auto kGammas = basemul_gammas();
inline constexpr int16_t kInv128 = pow_mod(128, kQ - 2);

} // namespace poly_detail

constexpr int16_t add_mod(int16_t a, int16_t b) {
    int16_t r = static_cast<int16_t>(a + b);
    return r >= kQ ? static_cast<int16_t>(r - kQ) : r;
}

constexpr int16_t sub_mod(int16_t a, int16_t b) {
    int16_t r = static_cast<int16_t>(a - b);
    return r < 0 ? static_cast<int16_t>(r + kQ) : r;
}

constexpr int16_t mul_mod(int16_t a, int16_t b) {
    return static_cast<int16_t>(static_cast<int32_t>(a) * b % kQ);
}

/// In-place layered NTT.
inline void ntt(Poly& f) {
    int i = 1;
    for (int len = 128; len >= 2; len >>= 1) {
        for (int start = 0; start < kN; start += 2 * len) {
            const int16_t zeta = poly_detail::kZetas[i++];
            for (int j = start; j < start + len; ++j) {
                const int16_t t = mul_mod(zeta, f[j + len]);
                f[j + len] = sub_mod(f[j], t);
                f[j] = add_mod(f[j], t);
            }
        }
    }
}

/// In-place inverse NTT, including the 128^-1 normalization.
inline void inv_ntt(Poly& f) {
    int i = 127;
    for (int len = 2; len <= 128; len <<= 1) {
        for (int start = 0; start < kN; start += 2 * len) {
            const int16_t zeta = poly_detail::kZetas[i--];
            for (int j = start; j < start + len; ++j) {
                const int16_t t = f[j];
                f[j] = add_mod(t, f[j + len]);
                f[j + len] = mul_mod(zeta, sub_mod(f[j + len], t));
            }
        }
    }
    for (auto& c : f) {
        c = mul_mod(c, poly_detail::kInv128);
    }
}

/// Pointwise product in the NTT domain: 128 degree-1 multiplications
/// modulo X^2 - gamma_i.
inline Poly ntt_multiply(const Poly& a, const Poly& b) {
    Poly h{};
    for (int i = 0; i < 128; ++i) {
        const int16_t gamma = poly_detail::kGammas[i];
        const int16_t a0 = a[2 * i], a1 = a[2 * i + 1];
        const int16_t b0 = b[2 * i], b1 = b[2 * i + 1];
        h[2 * i] = add_mod(mul_mod(a0, b0), mul_mod(mul_mod(a1, b1), gamma));
        h[2 * i + 1] = add_mod(mul_mod(a0, b1), mul_mod(a1, b0));
    }
    return h;
}

inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly r;
    for (int i = 0; i < kN; ++i) {
        r[i] = add_mod(a[i], b[i]);
    }
    return r;
}

inline Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r;
    for (int i = 0; i < kN; ++i) {
        r[i] = sub_mod(a[i], b[i]);
    }
    return r;
}

/// Uniform rejection sampling of an NTT-domain polynomial from a SHAKE-128
/// stream seeded with rho || j || i. Squeezes as many bytes as it takes.
inline Poly sample_ntt(std::span<const uint8_t, 32> rho, uint8_t j, uint8_t i) {
    Shake128 xof;
    xof.absorb(rho);
    const uint8_t idx[2] = {j, i};
    xof.absorb(idx);

    Poly f{};
    int filled = 0;
    uint8_t block[3];
    while (filled < kN) {
        xof.squeeze(block);
        const int d1 = block[0] | ((block[1] & 0x0f) << 8);
        const int d2 = (block[1] >> 4) | (block[2] << 4);
        if (d1 < kQ) {
            f[filled++] = static_cast<int16_t>(d1);
        }
        if (d2 < kQ && filled < kN) {
            f[filled++] = static_cast<int16_t>(d2);
        }
    }
    return f;
}

/// Centered binomial sample from 64*eta bytes of PRF output.
inline Poly sample_cbd(std::span<const uint8_t> bytes, int eta) {
    auto bit = [&bytes](int t) { return (bytes[t / 8] >> (t % 8)) & 1; };
    Poly f{};
    for (int i = 0; i < kN; ++i) {
        int x = 0, y = 0;
        for (int j = 0; j < eta; ++j) {
            x += bit(2 * i * eta + j);
            y += bit(2 * i * eta + eta + j);
        }
        f[i] = sub_mod(static_cast<int16_t>(x), static_cast<int16_t>(y));
    }
    return f;
}

/// round(2^d / q * x) mod 2^d. Exact: q is odd, so no half-way ties occur.
constexpr uint16_t compress(int16_t x, int d) {
    const uint32_t scaled = (static_cast<uint32_t>(x) << d) + kQ / 2;
    return static_cast<uint16_t>((scaled / kQ) & ((1u << d) - 1));
}

/// round(q / 2^d * y), half-way cases rounded up.
constexpr int16_t decompress(uint16_t y, int d) {
    return static_cast<int16_t>((static_cast<uint32_t>(y) * kQ + (1u << (d - 1))) >> d);
}

/// Packs 256 d-bit values little-endian into 32*d bytes.
inline void pack_bits(std::span<uint8_t> out, std::span<const uint16_t> values, int d) {
    uint32_t acc = 0;
    int bits = 0;
    size_t pos = 0;
    for (uint16_t v : values) {
        acc |= static_cast<uint32_t>(v & ((1u << d) - 1)) << bits;
        bits += d;
        while (bits >= 8) {
            out[pos++] = static_cast<uint8_t>(acc);
            acc >>= 8;
            bits -= 8;
        }
    }
}

inline void unpack_bits(std::span<uint16_t> values, std::span<const uint8_t> in, int d) {
    uint32_t acc = 0;
    int bits = 0;
    size_t pos = 0;
    for (auto& v : values) {
        while (bits < d) {
            acc |= static_cast<uint32_t>(in[pos++]) << bits;
            bits += 8;
        }
        v = static_cast<uint16_t>(acc & ((1u << d) - 1));
        acc >>= d;
        bits -= d;
    }
}

/// 12-bit encoding of a full polynomial (384 bytes).
inline void poly_to_bytes(std::span<uint8_t> out, const Poly& f) {
    std::array<uint16_t, kN> v;
    for (int i = 0; i < kN; ++i) {
        v[i] = static_cast<uint16_t>(f[i]);
    }
    pack_bits(out, v, 12);
}

/// Inverse of poly_to_bytes. Values are reduced mod q; use
/// poly_is_canonical to detect non-canonical encodings.
inline Poly poly_from_bytes(std::span<const uint8_t> in) {
    std::array<uint16_t, kN> v;
    unpack_bits(v, in, 12);
    Poly f;
    for (int i = 0; i < kN; ++i) {
        f[i] = static_cast<int16_t>(v[i] % kQ);
    }
    return f;
}

inline bool poly_bytes_canonical(std::span<const uint8_t> in) {
    std::array<uint16_t, kN> v;
    unpack_bits(v, in, 12);
    for (uint16_t c : v) {
        if (c >= kQ) {
            return false;
        }
    }
    return true;
}

inline void poly_compress_to(std::span<uint8_t> out, const Poly& f, int d) {
    std::array<uint16_t, kN> v;
    for (int i = 0; i < kN; ++i) {
        v[i] = compress(f[i], d);
    }
    pack_bits(out, v, d);
}

inline Poly poly_decompress_from(std::span<const uint8_t> in, int d) {
    std::array<uint16_t, kN> v;
    unpack_bits(v, in, d);
    Poly f;
    for (int i = 0; i < kN; ++i) {
        f[i] = decompress(v[i], d);
    }
    return f;
}

} // namespace pqcps::kem
