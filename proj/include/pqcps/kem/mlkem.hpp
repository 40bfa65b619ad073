#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pqcps/bytes.hpp"
#include "pqcps/errors.hpp"
#include "pqcps/kem/keccak.hpp"
#include "pqcps/kem/params.hpp"
#include "pqcps/kem/poly.hpp"

namespace pqcps::kem {

inline constexpr size_t kKeygenSeedLen = 64; // d || z
inline constexpr size_t kEncapsSeedLen = 32; // m
inline constexpr size_t kSharedSecretLen = 32;

struct KeyPair {
    std::vector<uint8_t> public_key;
    SecureBytes secret_key;
    KemVariant variant;
};

struct Ciphertext {
    std::vector<uint8_t> bytes;
    KemVariant variant;
};

/// 32-byte KEM output. Compare with ct_equals only.
struct SharedSecret {
    SecureBytes bytes;

    bool ct_equals(const SharedSecret& other) const noexcept {
        return bytes.ct_equals(other.bytes);
    }
};

namespace mlkem_detail {

inline std::vector<uint8_t> prf(std::span<const uint8_t> key, uint8_t nonce, int eta) {
    Shake256 xof;
    xof.absorb(key);
    xof.absorb({&nonce, 1});
    std::vector<uint8_t> out(64 * static_cast<size_t>(eta));
    xof.squeeze(out);
    return out;
}

// Row-major k*k matrix of NTT-domain polynomials expanded from rho.
inline std::vector<Poly> expand_matrix(std::span<const uint8_t, 32> rho, int k) {
    std::vector<Poly> a(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            a[static_cast<size_t>(i) * k + j] =
                sample_ntt(rho, static_cast<uint8_t>(j), static_cast<uint8_t>(i));
        }
    }
    return a;
}

inline size_t pke_ek_len(const KemParams& p) { return 384 * static_cast<size_t>(p.k) + 32; }
inline size_t pke_dk_len(const KemParams& p) { return 384 * static_cast<size_t>(p.k); }

struct PkeKeys {
    std::vector<uint8_t> ek;
    std::vector<uint8_t> dk;
};

inline PkeKeys pke_keygen(std::span<const uint8_t, 32> d, const KemParams& p) {
    // (rho, sigma) = G(d || k); the rank byte domain-separates the variants.
    std::vector<uint8_t> g_in(d.begin(), d.end());
    g_in.push_back(static_cast<uint8_t>(p.k));
    const auto g = sha3_512(g_in);
    const std::span<const uint8_t, 32> rho(g.data(), 32);
    const std::span<const uint8_t, 32> sigma(g.data() + 32, 32);

    uint8_t nonce = 0;
    PolyVec s_hat(p.k), e_hat(p.k);
    for (auto& s : s_hat) {
        s = sample_cbd(prf(sigma, nonce++, p.eta1), p.eta1);
        ntt(s);
    }
    for (auto& e : e_hat) {
        e = sample_cbd(prf(sigma, nonce++, p.eta1), p.eta1);
        ntt(e);
    }

    const auto a = expand_matrix(rho, p.k);
    PkeKeys keys;
    keys.ek.resize(pke_ek_len(p));
    keys.dk.resize(pke_dk_len(p));
    for (int i = 0; i < p.k; ++i) {
        Poly t = e_hat[i];
        for (int j = 0; j < p.k; ++j) {
            t = poly_add(t, ntt_multiply(a[static_cast<size_t>(i) * p.k + j], s_hat[j]));
        }
        poly_to_bytes(std::span(keys.ek).subspan(384 * static_cast<size_t>(i), 384), t);
        poly_to_bytes(std::span(keys.dk).subspan(384 * static_cast<size_t>(i), 384), s_hat[i]);
    }
    std::copy(rho.begin(), rho.end(), keys.ek.end() - 32);
    return keys;
}

inline std::vector<uint8_t> pke_encrypt(std::span<const uint8_t> ek,
                                        std::span<const uint8_t> msg,
                                        std::span<const uint8_t> r, const KemParams& p) {
    PolyVec t_hat(p.k);
    for (int i = 0; i < p.k; ++i) {
        t_hat[i] = poly_from_bytes(ek.subspan(384 * static_cast<size_t>(i), 384));
    }
    const std::span<const uint8_t, 32> rho = ek.subspan(384 * static_cast<size_t>(p.k), 32)
                                                 .first<32>();
    const auto a = expand_matrix(rho, p.k);

    uint8_t nonce = 0;
    PolyVec y_hat(p.k), e1(p.k);
    for (auto& y : y_hat) {
        y = sample_cbd(prf(r, nonce++, p.eta1), p.eta1);
        ntt(y);
    }
    for (auto& e : e1) {
        e = sample_cbd(prf(r, nonce++, p.eta2), p.eta2);
    }
    const Poly e2 = sample_cbd(prf(r, nonce, p.eta2), p.eta2);

    std::vector<uint8_t> ct(p.ct_len);
    const size_t u_bytes = 32 * static_cast<size_t>(p.du);
    for (int i = 0; i < p.k; ++i) {
        // u = invNTT(A^T * y) + e1, so row i takes column i of A.
        Poly acc{};
        for (int j = 0; j < p.k; ++j) {
            acc = poly_add(acc, ntt_multiply(a[static_cast<size_t>(j) * p.k + i], y_hat[j]));
        }
        inv_ntt(acc);
        acc = poly_add(acc, e1[i]);
        poly_compress_to(std::span(ct).subspan(u_bytes * static_cast<size_t>(i), u_bytes), acc,
                         p.du);
    }

    // mu: each message bit decompressed to the nearest multiple of q/2.
    Poly mu{};
    for (int i = 0; i < kN; ++i) {
        mu[i] = decompress((msg[i / 8] >> (i % 8)) & 1, 1);
    }
    Poly v{};
    for (int j = 0; j < p.k; ++j) {
        v = poly_add(v, ntt_multiply(t_hat[j], y_hat[j]));
    }
    inv_ntt(v);
    v = poly_add(poly_add(v, e2), mu);
    poly_compress_to(std::span(ct).subspan(u_bytes * static_cast<size_t>(p.k)), v, p.dv);
    return ct;
}

inline std::vector<uint8_t> pke_decrypt(std::span<const uint8_t> dk,
                                        std::span<const uint8_t> ct, const KemParams& p) {
    const size_t u_bytes = 32 * static_cast<size_t>(p.du);
    Poly w{};
    {
        Poly acc{};
        for (int j = 0; j < p.k; ++j) {
            Poly u = poly_decompress_from(ct.subspan(u_bytes * static_cast<size_t>(j), u_bytes),
                                          p.du);
            ntt(u);
            const Poly s = poly_from_bytes(dk.subspan(384 * static_cast<size_t>(j), 384));
            acc = poly_add(acc, ntt_multiply(s, u));
        }
        inv_ntt(acc);
        const Poly v = poly_decompress_from(ct.subspan(u_bytes * static_cast<size_t>(p.k)), p.dv);
        w = poly_sub(v, acc);
    }
    std::vector<uint8_t> msg(32, 0);
    for (int i = 0; i < kN; ++i) {
        msg[i / 8] |= static_cast<uint8_t>(compress(w[i], 1) << (i % 8));
    }
    return msg;
}

// 0x00 if equal, 0xff otherwise, without data-dependent branches.
inline uint8_t ct_diff_mask(std::span<const uint8_t> a, std::span<const uint8_t> b) {
    uint8_t diff = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        diff |= static_cast<uint8_t>(a[i] ^ b[i]);
    }
    return static_cast<uint8_t>((-static_cast<uint64_t>(diff)) >> 56);
}

} // namespace mlkem_detail

/// Deterministic key generation from a 64-byte seed (d || z).
inline KeyPair keygen(KemVariant variant, std::span<const uint8_t> seed) {
    if (seed.size() != kKeygenSeedLen) {
        throw InputError("keygen seed must be 64 bytes");
    }
    const auto& p = params_for(variant);
    const auto d = seed.first<32>();
    const auto z = seed.subspan(32, 32);

    auto pke = mlkem_detail::pke_keygen(d, p);
    const auto ek_hash = sha3_256(pke.ek);

    KeyPair kp{.public_key = std::move(pke.ek), .secret_key = SecureBytes(p.sk_len),
               .variant = variant};
    auto sk = kp.secret_key.span();
    std::copy(pke.dk.begin(), pke.dk.end(), sk.begin());
    std::copy(kp.public_key.begin(), kp.public_key.end(),
              sk.begin() + static_cast<ptrdiff_t>(pke.dk.size()));
    std::copy(ek_hash.begin(), ek_hash.end(), sk.end() - 64);
    std::copy(z.begin(), z.end(), sk.end() - 32);
    secure_wipe(pke.dk.data(), pke.dk.size());
    return kp;
}

/// Deterministic encapsulation from a 32-byte seed. Rejects keys of the
/// wrong length and non-canonical coefficient encodings.
inline std::pair<Ciphertext, SharedSecret> encaps(std::span<const uint8_t> public_key,
                                                  KemVariant variant,
                                                  std::span<const uint8_t> seed) {
    const auto& p = params_for(variant);
    if (public_key.size() != p.pk_len) {
        throw InputError("public key must be " + std::to_string(p.pk_len) + " bytes");
    }
    if (seed.size() != kEncapsSeedLen) {
        throw InputError("encaps seed must be 32 bytes");
    }
    for (int i = 0; i < p.k; ++i) {
        if (!poly_bytes_canonical(public_key.subspan(384 * static_cast<size_t>(i), 384))) {
            throw InputError("public key encoding is not canonical");
        }
    }

    const auto ek_hash = sha3_256(public_key);
    std::vector<uint8_t> g_in(seed.begin(), seed.end());
    g_in.insert(g_in.end(), ek_hash.begin(), ek_hash.end());
    const auto g = sha3_512(g_in);

    Ciphertext ct{.bytes = mlkem_detail::pke_encrypt(public_key, seed,
                                                     std::span(g).subspan(32, 32), p),
                  .variant = variant};
    SharedSecret ss{SecureBytes(std::span(g).first(32))};
    return {std::move(ct), std::move(ss)};
}

/// Decapsulation with implicit rejection: a well-formed but dishonest
/// ciphertext yields a pseudorandom secret instead of an error.
inline SharedSecret decaps(std::span<const uint8_t> secret_key, const Ciphertext& ct) {
    const auto& p = params_for(ct.variant);
    if (secret_key.size() != p.sk_len) {
        throw InputError("secret key must be " + std::to_string(p.sk_len) + " bytes");
    }
    if (ct.bytes.size() != p.ct_len) {
        throw InputError("ciphertext must be " + std::to_string(p.ct_len) + " bytes");
    }

    const size_t dk_pke_len = mlkem_detail::pke_dk_len(p);
    const auto dk_pke = secret_key.first(dk_pke_len);
    const auto ek = secret_key.subspan(dk_pke_len, p.pk_len);
    const auto h = secret_key.subspan(dk_pke_len + p.pk_len, 32);
    const auto z = secret_key.subspan(dk_pke_len + p.pk_len + 32, 32);

    auto m = mlkem_detail::pke_decrypt(dk_pke, ct.bytes, p);
    std::vector<uint8_t> g_in(m.begin(), m.end());
    g_in.insert(g_in.end(), h.begin(), h.end());
    const auto g = sha3_512(g_in);

    // Rejection secret J(z || c), derived unconditionally.
    SecureBytes reject(kSharedSecretLen);
    {
        Shake256 xof;
        xof.absorb(z);
        xof.absorb(ct.bytes);
        xof.squeeze(reject.span());
    }

    const auto ct_prime = mlkem_detail::pke_encrypt(ek, m, std::span(g).subspan(32, 32), p);
    const uint8_t mask = mlkem_detail::ct_diff_mask(ct.bytes, ct_prime);

    SharedSecret ss{SecureBytes(kSharedSecretLen)};
    for (size_t i = 0; i < kSharedSecretLen; ++i) {
        ss.bytes[i] = static_cast<uint8_t>((g[i] & static_cast<uint8_t>(~mask)) |
                                           (reject[i] & mask));
    }
    secure_wipe(m.data(), m.size());
    secure_wipe(g_in.data(), g_in.size());
    return ss;
}

} // namespace pqcps::kem
