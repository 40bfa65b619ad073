#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

#include "pqcps/errors.hpp"

namespace pqcps::kem {

/// The three standardized ML-KEM parameter sets.
enum class KemVariant { Kyber512, Kyber768, Kyber1024 };

inline constexpr KemVariant kAllVariants[] = {KemVariant::Kyber512, KemVariant::Kyber768,
                                              KemVariant::Kyber1024};

/// Claimed strength metadata per variant. Static data; nothing here is
/// computed.
struct SecurityProfile {
    int nist_level;              // 1 / 3 / 5
    int core_svp_classical_bits; // primal/dual lattice attack cost, classical
    int core_svp_quantum_bits;   //   "  , quantum
    int gate_count_log2;
    int memory_log2;
};

/// Full constant record for one variant: ring parameters, noise widths,
/// ciphertext compression, wire sizes, and the claimed security profile.
struct KemParams {
    KemVariant variant;
    std::string_view name;

    int n;    // polynomial degree, 256 for every variant
    int k;    // module rank
    int q;    // coefficient modulus, 3329 for every variant
    int eta1; // noise width for secrets (keygen) and the r vector (encrypt)
    int eta2; // noise width for the error terms added during encryption
    int du;   // compression bits for the u ciphertext component
    int dv;   // compression bits for the v ciphertext component

    size_t pk_len;
    size_t sk_len;
    size_t ct_len;
    size_t ss_len; // always 32

    int delta_log2; // claimed decryption-failure exponent (negative)

    SecurityProfile security;
};

namespace params_detail {

inline constexpr std::array<KemParams, 3> kTable = {{
    {KemVariant::Kyber512, "kyber512", 256, 2, 3329, 3, 2, 10, 4, 800, 1632, 768, 32, -139,
     {1, 118, 107, 151, 94}},
    {KemVariant::Kyber768, "kyber768", 256, 3, 3329, 2, 2, 10, 4, 1184, 2400, 1088, 32, -164,
     {3, 183, 166, 215, 139}},
    {KemVariant::Kyber1024, "kyber1024", 256, 4, 3329, 2, 2, 11, 5, 1568, 3168, 1568, 32, -174,
     {5, 256, 232, 287, 190}},
}};

} // namespace params_detail

/// Total over the enumeration; the returned reference has static storage.
constexpr const KemParams& params_for(KemVariant variant) {
    return params_detail::kTable[static_cast<size_t>(variant)];
}

constexpr std::string_view to_string(KemVariant variant) { return params_for(variant).name; }

inline KemVariant variant_from_string(std::string_view name) {
    for (const auto& p : params_detail::kTable) {
        if (p.name == name) {
            return p.variant;
        }
    }
    throw InputError("unknown KEM variant: " + std::string(name));
}

} // namespace pqcps::kem
