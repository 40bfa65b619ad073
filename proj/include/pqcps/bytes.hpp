#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pqcps {

/// Overwrites a buffer in a way the optimizer is not allowed to elide.
inline void secure_wipe(uint8_t* data, size_t len) noexcept {
    volatile uint8_t* p = data;
    for (size_t i = 0; i < len; ++i) {
        p[i] = 0;
    }
}

/// Constant-time equality over equal-length byte ranges.
inline bool ct_equal(std::span<const uint8_t> a, std::span<const uint8_t> b) noexcept {
    if (a.size() != b.size()) {
        return false;
    }
    uint8_t diff = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        diff |= static_cast<uint8_t>(a[i] ^ b[i]);
    }
    return diff == 0;
}

/// Byte buffer for key material: zeroized on destruction and on move-out.
class SecureBytes {
public:
    SecureBytes() = default;
    explicit SecureBytes(size_t n) : buf_(n, 0) {}
    explicit SecureBytes(std::span<const uint8_t> data) : buf_(data.begin(), data.end()) {}

    SecureBytes(const SecureBytes&) = default;
    SecureBytes& operator=(const SecureBytes&) = default;

    SecureBytes(SecureBytes&& other) noexcept : buf_(std::move(other.buf_)) { other.wipe(); }
    SecureBytes& operator=(SecureBytes&& other) noexcept {
        if (this != &other) {
            wipe();
            buf_ = std::move(other.buf_);
            other.wipe();
        }
        return *this;
    }

    ~SecureBytes() { wipe(); }

    uint8_t* data() noexcept { return buf_.data(); }
    const uint8_t* data() const noexcept { return buf_.data(); }
    size_t size() const noexcept { return buf_.size(); }
    bool empty() const noexcept { return buf_.empty(); }
    uint8_t& operator[](size_t i) noexcept { return buf_[i]; }
    uint8_t operator[](size_t i) const noexcept { return buf_[i]; }

    std::span<const uint8_t> span() const noexcept { return {buf_.data(), buf_.size()}; }
    std::span<uint8_t> span() noexcept { return {buf_.data(), buf_.size()}; }

    /// Constant-time comparison; never use operator== on secrets.
    bool ct_equals(const SecureBytes& other) const noexcept { return ct_equal(span(), other.span()); }
    bool ct_equals(std::span<const uint8_t> other) const noexcept { return ct_equal(span(), other); }

private:
    void wipe() noexcept {
        if (!buf_.empty()) {
            secure_wipe(buf_.data(), buf_.size());
        }
        buf_.clear();
    }

    std::vector<uint8_t> buf_;
};

} // namespace pqcps
