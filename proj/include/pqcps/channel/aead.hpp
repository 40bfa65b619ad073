#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <openssl/evp.h>

#include "pqcps/errors.hpp"

namespace pqcps::channel {

inline constexpr size_t kAeadKeyLen = 32;
inline constexpr size_t kAeadNonceLen = 12;
inline constexpr size_t kAeadTagLen = 16;

namespace aead_detail {

struct CtxFree {
    void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CtxPtr = std::unique_ptr<EVP_CIPHER_CTX, CtxFree>;

inline CtxPtr make_ctx() {
    CtxPtr ctx(EVP_CIPHER_CTX_new());
    if (!ctx) {
        throw Error("EVP_CIPHER_CTX_new failed");
    }
    return ctx;
}

} // namespace aead_detail

/// AES-256-GCM seal: returns ciphertext || 16-byte tag.
inline std::vector<uint8_t> aead_seal(std::span<const uint8_t> key,
                                      std::span<const uint8_t> nonce,
                                      std::span<const uint8_t> aad,
                                      std::span<const uint8_t> plaintext) {
    if (key.size() != kAeadKeyLen || nonce.size() != kAeadNonceLen) {
        throw InputError("AEAD key must be 32 bytes and nonce 12 bytes");
    }
    auto ctx = aead_detail::make_ctx();
    if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), nonce.data()) !=
        1) {
        throw Error("AES-256-GCM init failed");
    }
    int len = 0;
    if (!aad.empty() &&
        EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())) !=
            1) {
        throw Error("AES-256-GCM aad failed");
    }
    std::vector<uint8_t> out(plaintext.size() + kAeadTagLen);
    if (EVP_EncryptUpdate(ctx.get(), out.data(), &len, plaintext.data(),
                          static_cast<int>(plaintext.size())) != 1) {
        throw Error("AES-256-GCM encrypt failed");
    }
    int fin = 0;
    if (EVP_EncryptFinal_ex(ctx.get(), out.data() + len, &fin) != 1) {
        throw Error("AES-256-GCM finalize failed");
    }
    if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kAeadTagLen,
                            out.data() + plaintext.size()) != 1) {
        throw Error("AES-256-GCM tag extraction failed");
    }
    return out;
}

/// AES-256-GCM open; throws AuthenticationError when the tag does not verify.
inline std::vector<uint8_t> aead_open(std::span<const uint8_t> key,
                                      std::span<const uint8_t> nonce,
                                      std::span<const uint8_t> aad,
                                      std::span<const uint8_t> sealed) {
    if (key.size() != kAeadKeyLen || nonce.size() != kAeadNonceLen) {
        throw InputError("AEAD key must be 32 bytes and nonce 12 bytes");
    }
    if (sealed.size() < kAeadTagLen) {
        throw InputError("sealed message shorter than the tag");
    }
    auto ctx = aead_detail::make_ctx();
    if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), nonce.data()) !=
        1) {
        throw Error("AES-256-GCM init failed");
    }
    int len = 0;
    if (!aad.empty() &&
        EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())) !=
            1) {
        throw Error("AES-256-GCM aad failed");
    }
    const size_t ct_len = sealed.size() - kAeadTagLen;
    std::vector<uint8_t> out(ct_len);
    if (EVP_DecryptUpdate(ctx.get(), out.data(), &len, sealed.data(),
                          static_cast<int>(ct_len)) != 1) {
        throw Error("AES-256-GCM decrypt failed");
    }
    std::vector<uint8_t> tag(sealed.end() - kAeadTagLen, sealed.end());
    if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kAeadTagLen, tag.data()) != 1) {
        throw Error("AES-256-GCM tag set failed");
    }
    int fin = 0;
    if (EVP_DecryptFinal_ex(ctx.get(), out.data() + len, &fin) != 1) {
        throw AuthenticationError("AEAD tag verification failed");
    }
    return out;
}

} // namespace pqcps::channel
