#pragma once

#include <array>
#include <string>
#include <string_view>

#include "pqcps/errors.hpp"

namespace pqcps::threat {

enum class SchemeType { SymmetricKey, PublicKey, HashFunction };

constexpr std::string_view to_string(SchemeType t) {
    switch (t) {
    case SchemeType::SymmetricKey: return "Symmetric Key";
    case SchemeType::PublicKey: return "Public Key";
    case SchemeType::HashFunction: return "Hash Function";
    }
    return "?";
}

/// What a large-scale quantum computer does to one traditional scheme
/// family.
struct ImpactEntry {
    std::string_view scheme;
    SchemeType type;
    std::string_view purpose;
    std::string_view impact;
};

inline constexpr std::array<ImpactEntry, 5> kImpactRegistry = {{
    {"AES", SchemeType::SymmetricKey, "Encryption", "Larger key sizes needed"},
    {"SHA-2, SHA-3", SchemeType::HashFunction, "Hashing", "Longer output needed"},
    {"RSA", SchemeType::PublicKey, "Signatures, Key Establishment", "No longer secure"},
    {"ECDSA, ECDH (ECC)", SchemeType::PublicKey, "Signatures, Key Exchange",
     "No longer secure"},
    {"DSA (Finite Field Cryptography)", SchemeType::PublicKey, "Signatures, Key Exchange",
     "No longer secure"},
}};

/// Registry lookup with the aliases dataflow annotations actually use
/// (ECDSA, SHA-256, ...). Returns nullptr for unknown schemes.
inline const ImpactEntry* find_impact_entry(std::string_view scheme) {
    auto canonical = [](std::string_view name) -> std::string_view {
        if (name == "AES" || name == "AES-128" || name == "AES-192" || name == "AES-256") {
            return "AES";
        }
        if (name == "SHA-2" || name == "SHA-3" || name == "SHA-224" || name == "SHA-256" ||
            name == "SHA-384" || name == "SHA-512" || name == "SHA3-256" ||
            name == "SHA3-512") {
            return "SHA-2, SHA-3";
        }
        if (name == "RSA" || name == "RSA-2048" || name == "RSA-3072" || name == "RSA-4096") {
            return "RSA";
        }
        if (name == "ECDSA" || name == "ECDH" || name == "ECC" ||
            name == "ECDSA, ECDH (ECC)") {
            return "ECDSA, ECDH (ECC)";
        }
        if (name == "DSA" || name == "DSA (Finite Field Cryptography)") {
            return "DSA (Finite Field Cryptography)";
        }
        return name;
    };
    const auto key = canonical(scheme);
    for (const auto& entry : kImpactRegistry) {
        if (entry.scheme == key) {
            return &entry;
        }
    }
    return nullptr;
}

inline std::string_view impact_of(std::string_view scheme) {
    const auto* entry = find_impact_entry(scheme);
    if (entry == nullptr) {
        throw LookupError("scheme not in the impact registry: " + std::string(scheme));
    }
    return entry->impact;
}

/// Quantum attack, consequence and suggested post-quantum mitigation for
/// one vulnerability class.
struct MitigationEntry {
    std::string_view vulnerability;
    std::string_view quantum_attack;
    std::string_view impact;
    std::string_view mitigation;
};

inline constexpr std::array<MitigationEntry, 5> kMitigationTable = {{
    {"Weak Authentication Scheme",
     "Shor's algorithm can efficiently factorize large integers and solve discrete "
     "logarithms, breaking RSA and ECC.",
     "Unauthorized access and breached confidentiality",
     "Use PQC algorithms, such as CRYSTALS-Kyber or Falcon"},
    {"Collision Attacks",
     "Grover's algorithm can find the pre-image of a hash function with a quadratic "
     "speedup, reducing the security level.",
     "Data tampering", "Use hash-based PQC algorithms like SPHINCS+"},
    {"Replay Attacks",
     "With compromised cryptographic protocols, attackers can intercept and retransmit "
     "valid data packets.",
     "System manipulation, repeated transactions, and fraud",
     "Implement time-based protocols and secure communication channels with PQC"},
    {"Elevation Using Impersonation",
     "Attackers can impersonate legitimate users or devices by breaking the underlying "
     "cryptographic keys.",
     "Unauthorized actions and security breaches",
     "Adopt lattice-based PQC schemes (i.e., CRYSTALS-Kyber)"},
    {"Elevation by Changing Execution Flow",
     "If the encryption used to secure communication is compromised, attackers can insert "
     "malicious code.",
     "System takeover and data breaches",
     "Secure communication with PQC algorithms and implement robust input validation and "
     "security checks (secure PQC coding practices)"},
}};

/// Folds per-element elevation-of-privilege titles onto their class.
inline std::string_view normalize_finding_title(std::string_view title) {
    if (title.find("Remote Code Execution") != std::string_view::npos ||
        title.find("Changing the Execution Flow") != std::string_view::npos) {
        return "Elevation by Changing Execution Flow";
    }
    return title;
}

inline const MitigationEntry& mitigation_for(std::string_view finding_title) {
    const auto key = normalize_finding_title(finding_title);
    for (const auto& entry : kMitigationTable) {
        if (entry.vulnerability == key) {
            return entry;
        }
    }
    throw LookupError("no mitigation recorded for finding: " + std::string(finding_title));
}

} // namespace pqcps::threat
