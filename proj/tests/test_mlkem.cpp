#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "pqcps/hex.hpp"
#include "pqcps/rng.hpp"
#include "pqcps/kem/mlkem.hpp"

using namespace pqcps;
using namespace pqcps::kem;

namespace {

struct KatRecord {
    std::vector<uint8_t> seed_keygen;
    std::vector<uint8_t> seed_encaps;
    std::vector<uint8_t> pk, sk, ct, ss;
};

// KAT files: one record per line, comma-separated hex fields
// seed_keygen, seed_encaps, pk, sk, ct, ss. '#' lines are comments.
std::vector<KatRecord> load_kat(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<KatRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<std::string> fields;
        size_t start = 0;
        while (start <= line.size()) {
            const size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        REQUIRE(fields.size() == 6);
        records.push_back({from_hex(fields[0]), from_hex(fields[1]), from_hex(fields[2]),
                           from_hex(fields[3]), from_hex(fields[4]), from_hex(fields[5])});
    }
    return records;
}

std::string kat_path(KemVariant v) {
    return std::string(PQCPS_DATA_DIR) + "/kat/mlkem" + std::string(to_string(v)).substr(5) +
           ".kat";
}

std::vector<uint8_t> seed_from(SplitMix64& rng, size_t n) {
    std::vector<uint8_t> s(n);
    rng.fill_bytes(s);
    return s;
}

} // namespace

TEST_CASE("known-answer vectors pass bit-exactly") {
    for (auto variant : kAllVariants) {
        const auto records = load_kat(kat_path(variant));
        REQUIRE(!records.empty());
        for (const auto& r : records) {
            const auto kp = keygen(variant, r.seed_keygen);
            CHECK(kp.public_key == r.pk);
            CHECK(ct_equal(kp.secret_key.span(), r.sk));

            const auto [ct, ss] = encaps(r.pk, variant, r.seed_encaps);
            CHECK(ct.bytes == r.ct);
            CHECK(ss.bytes.ct_equals(r.ss));

            const auto ss2 = decaps(r.sk, Ciphertext{r.ct, variant});
            CHECK(ss2.bytes.ct_equals(r.ss));
        }
    }
}

TEST_CASE("emitted sizes match the published table") {
    SplitMix64 rng(0x51135);
    for (auto variant : kAllVariants) {
        const auto& p = params_for(variant);
        const auto kp = keygen(variant, seed_from(rng, kKeygenSeedLen));
        CHECK(kp.public_key.size() == p.pk_len);
        CHECK(kp.secret_key.size() == p.sk_len);
        const auto [ct, ss] = encaps(kp.public_key, variant, seed_from(rng, kEncapsSeedLen));
        CHECK(ct.bytes.size() == p.ct_len);
        CHECK(ss.bytes.size() == 32);
    }
}

TEST_CASE("operations are deterministic in their seeds") {
    SplitMix64 rng(0xdead);
    const auto seed64 = seed_from(rng, kKeygenSeedLen);
    const auto seed32 = seed_from(rng, kEncapsSeedLen);
    for (auto variant : kAllVariants) {
        const auto kp1 = keygen(variant, seed64);
        const auto kp2 = keygen(variant, seed64);
        CHECK(kp1.public_key == kp2.public_key);
        CHECK(ct_equal(kp1.secret_key.span(), kp2.secret_key.span()));

        const auto [ct1, ss1] = encaps(kp1.public_key, variant, seed32);
        const auto [ct2, ss2] = encaps(kp1.public_key, variant, seed32);
        CHECK(ct1.bytes == ct2.bytes);
        CHECK(ss1.ct_equals(ss2));
    }
}

TEST_CASE("distinct seeds give distinct public keys") {
    SplitMix64 rng(0xfeed);
    std::set<std::vector<uint8_t>> keys;
    for (int i = 0; i < 100; ++i) {
        keys.insert(keygen(KemVariant::Kyber512, seed_from(rng, kKeygenSeedLen)).public_key);
    }
    CHECK(keys.size() == 100);
}

TEST_CASE("round trip recovers the encapsulated secret") {
    SplitMix64 rng(0xc0ffee);
    for (auto variant : kAllVariants) {
        for (int trial = 0; trial < 25; ++trial) {
            const auto kp = keygen(variant, seed_from(rng, kKeygenSeedLen));
            const auto [ct, ss] = encaps(kp.public_key, variant, seed_from(rng, kEncapsSeedLen));
            const auto ss2 = decaps(kp.secret_key.span(), ct);
            CHECK(ss2.ct_equals(ss));
        }
    }
}

TEST_CASE("tampered ciphertext diverges via implicit rejection") {
    SplitMix64 rng(0x7a3b);
    for (auto variant : kAllVariants) {
        const auto kp = keygen(variant, seed_from(rng, kKeygenSeedLen));
        const auto [ct, ss] = encaps(kp.public_key, variant, seed_from(rng, kEncapsSeedLen));
        for (int trial = 0; trial < 100; ++trial) {
            Ciphertext mangled = ct;
            const size_t pos = rng.next() % mangled.bytes.size();
            mangled.bytes[pos] ^= static_cast<uint8_t>(1 + rng.next() % 255);
            const auto ss2 = decaps(kp.secret_key.span(), mangled);
            CHECK(ss2.bytes.size() == 32);
            CHECK(!ss2.ct_equals(ss));
        }
    }
}

TEST_CASE("malformed inputs are rejected") {
    SplitMix64 rng(0x11);
    const auto short_seed = seed_from(rng, 63);
    CHECK_THROWS_AS(keygen(KemVariant::Kyber512, short_seed), InputError);

    const auto kp = keygen(KemVariant::Kyber512, seed_from(rng, kKeygenSeedLen));
    const auto seed32 = seed_from(rng, kEncapsSeedLen);
    auto truncated = kp.public_key;
    truncated.pop_back();
    CHECK_THROWS_AS(encaps(truncated, KemVariant::Kyber512, seed32), InputError);
    CHECK_THROWS_AS(encaps(kp.public_key, KemVariant::Kyber768, seed32), InputError);
    CHECK_THROWS_AS(encaps(kp.public_key, KemVariant::Kyber512, std::span(seed32).first(31)),
                    InputError);

    // non-canonical coefficient (>= q) in the first 12-bit slot
    auto bad = kp.public_key;
    bad[0] = 0xff;
    bad[1] = 0xff;
    CHECK_THROWS_AS(encaps(bad, KemVariant::Kyber512, seed32), InputError);

    const auto [ct, ss] = encaps(kp.public_key, KemVariant::Kyber512, seed32);
    auto short_ct = ct;
    short_ct.bytes.pop_back();
    CHECK_THROWS_AS(decaps(kp.secret_key.span(), short_ct), InputError);
    CHECK_THROWS_AS(decaps(kp.secret_key.span().first(100), ct), InputError);
}
