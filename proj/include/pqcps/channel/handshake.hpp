#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pqcps/bytes.hpp"
#include "pqcps/errors.hpp"
#include "pqcps/msg_kind.hpp"
#include "pqcps/channel/aead.hpp"
#include "pqcps/kem/mlkem.hpp"

namespace pqcps::channel {

using kem::KemVariant;

/// The KeyHolder generates the key pair and decapsulates; the Encapsulator
/// receives the public key and sends back the ciphertext.
enum class Role : uint8_t { KeyHolder = 0, Encapsulator = 1 };

constexpr std::string_view to_string(Role role) {
    return role == Role::KeyHolder ? "key_holder" : "encapsulator";
}

/// Per-message AEAD expansion: 8-byte counter prefix plus 16-byte tag.
inline constexpr size_t kDataOverheadBytes = 8 + kAeadTagLen;

/// One protocol message. size_bytes() is the payload size, which is exactly
/// what the delay model charges for (pk_len / ct_len / plaintext+24).
struct WireMessage {
    MsgKind kind;
    std::vector<uint8_t> payload;

    size_t size_bytes() const noexcept { return payload.size(); }
};

/// Transport framing: 1-byte kind tag || 4-byte big-endian payload length
/// || payload.
inline std::vector<uint8_t> encode_frame(const WireMessage& msg) {
    std::vector<uint8_t> out;
    out.reserve(5 + msg.payload.size());
    out.push_back(static_cast<uint8_t>(msg.kind));
    const uint32_t len = static_cast<uint32_t>(msg.payload.size());
    for (int shift = 24; shift >= 0; shift -= 8) {
        out.push_back(static_cast<uint8_t>(len >> shift));
    }
    out.insert(out.end(), msg.payload.begin(), msg.payload.end());
    return out;
}

inline WireMessage decode_frame(std::span<const uint8_t> bytes) {
    if (bytes.size() < 5) {
        throw ProtocolError("frame shorter than its header");
    }
    const uint8_t tag = bytes[0];
    if (tag < 1 || tag > 3) {
        throw ProtocolError("unknown frame kind tag");
    }
    uint32_t len = 0;
    for (int i = 1; i <= 4; ++i) {
        len = (len << 8) | bytes[i];
    }
    if (bytes.size() != 5u + len) {
        throw ProtocolError("frame length field disagrees with payload");
    }
    return {static_cast<MsgKind>(tag), {bytes.begin() + 5, bytes.end()}};
}

/// Established channel: the 32-byte KEM secret used directly as the
/// AES-256-GCM traffic key, plus strictly increasing per-direction counters.
class Session {
public:
    static Session from_traffic_key(SecureBytes key, Role role, KemVariant variant,
                                    uint64_t initial_send = 0, uint64_t initial_recv = 0) {
        if (key.size() != kAeadKeyLen) {
            throw InputError("traffic key must be 32 bytes");
        }
        return Session(std::move(key), role, variant, initial_send, initial_recv);
    }

    Role role() const noexcept { return role_; }
    KemVariant variant() const noexcept { return variant_; }
    uint64_t send_counter() const noexcept { return send_counter_; }
    uint64_t recv_counter() const noexcept { return recv_counter_; }

    /// Constant-time key comparison, for tests and handshake verification.
    bool key_matches(const Session& other) const noexcept {
        return traffic_key_.ct_equals(other.traffic_key_);
    }

    WireMessage seal(std::span<const uint8_t> plaintext) {
        if (send_counter_ == UINT64_MAX) {
            throw SessionError("send counter space exhausted");
        }
        const uint64_t counter = send_counter_++;
        const auto nonce = make_nonce(role_, counter);
        const uint8_t aad = static_cast<uint8_t>(MsgKind::EncryptedData);
        auto sealed = aead_seal(traffic_key_.span(), nonce, {&aad, 1}, plaintext);

        WireMessage msg{MsgKind::EncryptedData, {}};
        msg.payload.reserve(8 + sealed.size());
        for (int shift = 56; shift >= 0; shift -= 8) {
            msg.payload.push_back(static_cast<uint8_t>(counter >> shift));
        }
        msg.payload.insert(msg.payload.end(), sealed.begin(), sealed.end());
        return msg;
    }

    std::vector<uint8_t> open(const WireMessage& msg) {
        if (msg.kind != MsgKind::EncryptedData) {
            throw ProtocolError("open() expects an encrypted data message");
        }
        if (msg.payload.size() < 8 + kAeadTagLen) {
            throw ProtocolError("encrypted data message too short");
        }
        uint64_t counter = 0;
        for (int i = 0; i < 8; ++i) {
            counter = (counter << 8) | msg.payload[i];
        }
        // Authenticate first: the counter participates via the peer nonce,
        // so any bit flipped anywhere in the payload fails the tag.
        const Role peer = role_ == Role::KeyHolder ? Role::Encapsulator : Role::KeyHolder;
        const auto nonce = make_nonce(peer, counter);
        const uint8_t aad = static_cast<uint8_t>(MsgKind::EncryptedData);
        auto plaintext =
            aead_open(traffic_key_.span(), nonce, {&aad, 1}, std::span(msg.payload).subspan(8));
        if (counter != recv_counter_) {
            throw ReplayError("message counter is not fresh");
        }
        recv_counter_ = counter + 1;
        return plaintext;
    }

private:
    Session(SecureBytes key, Role role, KemVariant variant, uint64_t send, uint64_t recv)
        : traffic_key_(std::move(key)), role_(role), variant_(variant), send_counter_(send),
          recv_counter_(recv) {}

    static std::array<uint8_t, kAeadNonceLen> make_nonce(Role sender, uint64_t counter) {
        std::array<uint8_t, kAeadNonceLen> nonce{};
        nonce[0] = static_cast<uint8_t>(sender);
        for (int i = 0; i < 8; ++i) {
            nonce[4 + i] = static_cast<uint8_t>(counter >> (56 - 8 * i));
        }
        return nonce;
    }

    SecureBytes traffic_key_;
    Role role_;
    KemVariant variant_;
    uint64_t send_counter_;
    uint64_t recv_counter_;
};

enum class HandshakePhase { AwaitingPeer, Established };

/// KeyHolder-side handshake state between initiate() and complete().
/// The phase only ever moves forward.
class HandshakeState {
public:
    Role role() const noexcept { return Role::KeyHolder; }
    KemVariant variant() const noexcept { return variant_; }
    HandshakePhase phase() const noexcept { return phase_; }

private:
    friend std::pair<HandshakeState, WireMessage> initiate(KemVariant,
                                                           std::span<const uint8_t>);
    friend Session complete(HandshakeState&, const WireMessage&);

    HandshakeState(KemVariant variant, kem::KeyPair kp)
        : variant_(variant), key_pair_(std::move(kp)) {}

    KemVariant variant_;
    kem::KeyPair key_pair_;
    HandshakePhase phase_ = HandshakePhase::AwaitingPeer;
};

/// KeyHolder: generate a key pair and emit the public-key message.
inline std::pair<HandshakeState, WireMessage> initiate(KemVariant variant,
                                                       std::span<const uint8_t> seed) {
    auto kp = kem::keygen(variant, seed);
    WireMessage msg{MsgKind::PublicKey, kp.public_key};
    return {HandshakeState(variant, std::move(kp)), std::move(msg)};
}

/// Encapsulator: consume the public key, emit the ciphertext message, and
/// come up with an established session immediately.
inline std::pair<Session, WireMessage> respond(KemVariant variant, const WireMessage& msg,
                                               std::span<const uint8_t> seed) {
    const auto& p = kem::params_for(variant);
    if (msg.kind != MsgKind::PublicKey) {
        throw ProtocolError("respond() expects a public key message");
    }
    if (msg.payload.size() != p.pk_len) {
        throw ProtocolError("public key message has wrong payload length");
    }
    auto [ct, ss] = kem::encaps(msg.payload, variant, seed);
    WireMessage reply{MsgKind::Ciphertext, std::move(ct.bytes)};
    return {Session::from_traffic_key(std::move(ss.bytes), Role::Encapsulator, variant),
            std::move(reply)};
}

/// KeyHolder: decapsulate the ciphertext message. A tampered ciphertext
/// still yields a session (implicit rejection); the key mismatch surfaces
/// as an authentication failure on the first data message.
inline Session complete(HandshakeState& state, const WireMessage& msg) {
    const auto& p = kem::params_for(state.variant_);
    if (state.phase_ != HandshakePhase::AwaitingPeer) {
        throw ProtocolError("handshake already completed");
    }
    if (msg.kind != MsgKind::Ciphertext) {
        throw ProtocolError("complete() expects a ciphertext message");
    }
    if (msg.payload.size() != p.ct_len) {
        throw ProtocolError("ciphertext message has wrong payload length");
    }
    auto ss = kem::decaps(state.key_pair_.secret_key.span(),
                          kem::Ciphertext{msg.payload, state.variant_});
    state.phase_ = HandshakePhase::Established;
    return Session::from_traffic_key(std::move(ss.bytes), Role::KeyHolder, state.variant_);
}

} // namespace pqcps::channel
