#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <string_view>
#include <vector>

#include "pqcps/errors.hpp"
#include "pqcps/rng.hpp"
#include "pqcps/kem/mlkem.hpp"

namespace pqcps::kem {

enum class CryptoOp { Keygen, Encaps, Decaps };

inline constexpr CryptoOp kAllOps[] = {CryptoOp::Keygen, CryptoOp::Encaps, CryptoOp::Decaps};

constexpr std::string_view to_string(CryptoOp op) {
    switch (op) {
    case CryptoOp::Keygen: return "keygen";
    case CryptoOp::Encaps: return "encaps";
    case CryptoOp::Decaps: return "decaps";
    }
    return "?";
}

inline CryptoOp op_from_string(std::string_view s) {
    if (s == "keygen") return CryptoOp::Keygen;
    if (s == "encaps") return CryptoOp::Encaps;
    if (s == "decaps") return CryptoOp::Decaps;
    throw InputError("unknown crypto op: " + std::string(s));
}

/// Reference execution-time table: per variant, {cycle count, time in us}
/// for keygen / encaps / decaps as reported for the i7-7700 test machine.
struct ReferenceTiming {
    uint64_t cycles;
    double time_us;
};

inline constexpr ReferenceTiming kReferenceTimings[3][3] = {
    {{155365, 44.0}, {191358, 53.0}, {232691, 65.0}},
    {{272804, 75.0}, {320600, 89.0}, {365776, 101.0}},
    {{387324, 107.0}, {436250, 121.0}, {531310, 147.0}},
};

inline constexpr ReferenceTiming reference_timing(KemVariant v, CryptoOp op) {
    return kReferenceTimings[static_cast<size_t>(v)][static_cast<size_t>(op)];
}

/// Clock period of the reference machine, used only to convert measured
/// times into comparable cycle estimates.
inline constexpr double kReferenceCyclePeriodNs = 0.29;

enum class BenchMode { Measured, Injected };

struct OpTiming {
    KemVariant variant;
    CryptoOp op;
    size_t samples;
    double mean_us;
    double median_us;
    double min_us;
    double max_us;
    double cycle_estimate;
};

/// Times one KEM operation. `Measured` runs it with fresh seeds on a
/// monotonic clock; `Injected` replays the reference table verbatim so
/// downstream reports are reproducible anywhere.
inline OpTiming bench_op(KemVariant variant, CryptoOp op, size_t iterations, BenchMode mode,
                         double cycle_period_ns = kReferenceCyclePeriodNs) {
    if (iterations < 1) {
        throw InputError("bench_op requires iterations >= 1");
    }
    if (mode == BenchMode::Injected) {
        const auto ref = reference_timing(variant, op);
        return {variant, op,      iterations, ref.time_us, ref.time_us,
                ref.time_us, ref.time_us, static_cast<double>(ref.cycles)};
    }

    SplitMix64 rng(derive_seed(0x42, "bench", static_cast<uint64_t>(variant) * 8 +
                                                  static_cast<uint64_t>(op)));
    std::vector<uint8_t> seed64(kKeygenSeedLen), seed32(kEncapsSeedLen);
    std::vector<double> samples;
    samples.reserve(iterations);

    using clock = std::chrono::steady_clock;
    auto elapsed_us = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double, std::micro>(b - a).count();
    };

    for (size_t i = 0; i < iterations; ++i) {
        rng.fill_bytes(seed64);
        rng.fill_bytes(seed32);
        switch (op) {
        case CryptoOp::Keygen: {
            const auto t0 = clock::now();
            auto kp = keygen(variant, seed64);
            const auto t1 = clock::now();
            samples.push_back(elapsed_us(t0, t1));
            break;
        }
        case CryptoOp::Encaps: {
            const auto kp = keygen(variant, seed64);
            const auto t0 = clock::now();
            auto out = encaps(kp.public_key, variant, seed32);
            const auto t1 = clock::now();
            samples.push_back(elapsed_us(t0, t1));
            break;
        }
        case CryptoOp::Decaps: {
            const auto kp = keygen(variant, seed64);
            auto [ct, ss] = encaps(kp.public_key, variant, seed32);
            const auto t0 = clock::now();
            auto out = decaps(kp.secret_key.span(), ct);
            const auto t1 = clock::now();
            samples.push_back(elapsed_us(t0, t1));
            break;
        }
        }
    }

    std::sort(samples.begin(), samples.end());
    double sum = 0;
    for (double s : samples) {
        sum += s;
    }
    const double mean = sum / static_cast<double>(samples.size());
    const size_t n = samples.size();
    const double median = n % 2 == 1 ? samples[n / 2] : (samples[n / 2 - 1] + samples[n / 2]) / 2;
    return {variant,      op,   n, mean, median, samples.front(), samples.back(),
            mean * 1000.0 / cycle_period_ns};
}

} // namespace pqcps::kem
