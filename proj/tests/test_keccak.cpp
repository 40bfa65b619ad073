#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <vector>

#include "pqcps/hex.hpp"
#include "pqcps/kem/keccak.hpp"

using namespace pqcps;
using namespace pqcps::kem;

namespace {

std::vector<uint8_t> bytes_of(std::string_view s) {
    return {s.begin(), s.end()};
}

} // namespace

// Expected digests computed with CPython's hashlib (independent Keccak).
TEST_CASE("sha3 fixed digests") {
    const std::vector<uint8_t> empty;
    CHECK(to_hex(sha3_256(empty)) ==
          "a7ffc6f8bf1ed76651c14756a061d662f580ff4de43b49fa82d80a4b80f8434a");
    CHECK(to_hex(sha3_512(empty)) ==
          "a69f73cca23a9ac5c8b567dc185a756e97c982164fe25859e0d1dcc1475c80a615b2123af1f5f94c11e3"
          "e9402c3ac558f500199d95b6d3e301758586281dcd26");

    const auto abc = bytes_of("abc");
    CHECK(to_hex(sha3_256(abc)) ==
          "3a985da74fe225b2045c172d6bd390bd855f086e3e9d525b46bfe24511431532");
    CHECK(to_hex(sha3_512(abc)) ==
          "b751850b1a57168a5693cd924b6b096e08f621827444f70d884f5d0240d2712e10e116e9192af3c91a7e"
          "c57647e3934057340b4cf408d5a56592f8274eec53f0");

    // 200 bytes spans multiple absorb blocks for both rates.
    std::vector<uint8_t> ramp(200);
    std::iota(ramp.begin(), ramp.end(), 0);
    CHECK(to_hex(sha3_256(ramp)) ==
          "5f728f63bf5ee48c77f453c0490398fa645b8d4c4e56be9a41cfec344d6ca899");
    CHECK(to_hex(sha3_512(ramp)) ==
          "ea5d05f19348dd589793354793a15f37a73b4c0bb4e750b9a00757dfce2f8b65a64191bb9b137de00fee"
          "f6474cfd47abf7880efbc51614a5715df12cfe0caee3");
}

TEST_CASE("shake fixed digests") {
    const std::vector<uint8_t> empty;
    std::vector<uint8_t> out(32);
    shake128(empty, out);
    CHECK(to_hex(out) == "7f9c2ba4e88f827d616045507605853ed73b8093f6efbc88eb1a6eacfa66ef26");

    const auto fox = bytes_of("The quick brown fox jumps over the lazy dog");
    shake128(fox, out);
    CHECK(to_hex(out) == "f4202e3c5852f9182a0430fd8144f0a74b95e7417ecae17db0f8cfeed0e3e66e");

    std::vector<uint8_t> out64(64);
    shake256(fox, out64);
    CHECK(to_hex(out64) ==
          "2f671343d9b2e1604dc9dcf0753e5fe15c7c64a0d283cbbf722d411a0e36f6ca1d01d1369a23539cd80f"
          "7c054b6e5daf9c962cad5b8ed5bd11998b40d5734442");
}

TEST_CASE("shake long squeeze crosses block boundaries") {
    std::vector<uint8_t> out(400);
    shake128({}, out);
    CHECK(to_hex(std::span(out).first(32)) ==
          "7f9c2ba4e88f827d616045507605853ed73b8093f6efbc88eb1a6eacfa66ef26");
    CHECK(to_hex(std::span(out).last(32)) ==
          "3a7a9c4a95d91c55d495e9f51dd0b5e9d83c6d5e8ce803aa62b8d654db53d09b");

    const auto abc = bytes_of("abc");
    std::vector<uint8_t> out300(300);
    shake256(abc, out300);
    CHECK(to_hex(std::span(out300).first(32)) ==
          "483366601360a8771c6863080cc4114d8db44530f8f1e1ee4f94ea37e78b5739");
    CHECK(to_hex(std::span(out300).last(32)) ==
          "2ddf384af3334560ea1d363966caa7d8ddcbec7da52b42215c11d5f8ee57f341");
}

TEST_CASE("incremental absorb and squeeze match one-shot") {
    std::vector<uint8_t> msg(500);
    for (size_t i = 0; i < msg.size(); ++i) {
        msg[i] = static_cast<uint8_t>(i * 7 + 1);
    }
    std::vector<uint8_t> oneshot(137);
    shake256(msg, oneshot);

    Shake256 xof;
    xof.absorb(std::span(msg).first(1));
    xof.absorb(std::span(msg).subspan(1, 299));
    xof.absorb(std::span(msg).subspan(300));
    std::vector<uint8_t> chunked(137);
    xof.squeeze(std::span(chunked).first(5));
    xof.squeeze(std::span(chunked).subspan(5, 131));
    xof.squeeze(std::span(chunked).subspan(136));
    CHECK(chunked == oneshot);
}
