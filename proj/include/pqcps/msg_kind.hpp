#pragma once

#include <cstdint>
#include <string_view>

#include "pqcps/errors.hpp"

namespace pqcps {

/// The three message classes whose transit delays the lab accounts for:
/// the handshake public key, the KEM ciphertext, and AEAD-protected data.
enum class MsgKind : uint8_t {
    PublicKey = 1,
    Ciphertext = 2,
    EncryptedData = 3,
};

inline constexpr MsgKind kAllMsgKinds[] = {MsgKind::PublicKey, MsgKind::Ciphertext,
                                           MsgKind::EncryptedData};

constexpr std::string_view to_string(MsgKind kind) {
    switch (kind) {
    case MsgKind::PublicKey: return "public_key";
    case MsgKind::Ciphertext: return "ciphertext";
    case MsgKind::EncryptedData: return "encrypted_data";
    }
    return "?";
}

inline MsgKind msg_kind_from_string(std::string_view s) {
    if (s == "public_key") return MsgKind::PublicKey;
    if (s == "ciphertext") return MsgKind::Ciphertext;
    if (s == "encrypted_data") return MsgKind::EncryptedData;
    throw ParseError("unknown message kind: " + std::string(s));
}

} // namespace pqcps
