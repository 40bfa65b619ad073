#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "pqcps/errors.hpp"
#include "pqcps/rng.hpp"
#include "pqcps/channel/handshake.hpp"
#include "pqcps/sim/engine.hpp"

namespace pqcps::scenario {

using kem::BenchMode;
using kem::KemVariant;
using sim::Medium;

/// One of the four evaluated P2P configurations, fully resolved: link
/// preset, node mobility, KEM variant, and run count.
struct Scenario {
    int id; // 1..4
    Medium medium;
    sim::MobilityModel mobility_a;
    sim::MobilityModel mobility_b;
    KemVariant variant;
    BenchMode crypto_mode = BenchMode::Injected;
    int runs = 5;
    uint32_t data_message_bytes = 32;
    char initiator = 'a'; // which node generates the key pair
    sim::LinkModel link;
    double threshold_us = 100000.0;
};

inline std::string scenario_label(const Scenario& s) {
    const int mobile = static_cast<int>(sim::is_mobile(s.mobility_a)) +
                       static_cast<int>(sim::is_mobile(s.mobility_b));
    switch (mobile) {
    case 0: return "static-static";
    case 1: return "static-dynamic";
    default: return "dynamic-dynamic";
    }
}

/// The four evaluated setups. Static pairs sit 1350 m apart (the C-V2X
/// range); scenario 3 parks one node at the center of a 1910 m box so the
/// waypoint node tops out at the same 1350 m; scenario 4 shrinks the box
/// to 955 m so two waypoint nodes keep that same maximum separation.
inline Scenario build_reference_scenario(int id, KemVariant variant) {
    Scenario s;
    s.id = id;
    s.variant = variant;
    switch (id) {
    case 1:
        s.medium = Medium::Wired;
        s.mobility_a = sim::StaticMobility{{0, 0}};
        s.mobility_b = sim::StaticMobility{{1350, 0}};
        s.link = sim::LinkModel::wired_default();
        break;
    case 2:
        s.medium = Medium::WirelessAdhoc;
        s.mobility_a = sim::StaticMobility{{0, 0}};
        s.mobility_b = sim::StaticMobility{{1350, 0}};
        s.link = sim::LinkModel::wireless_adhoc_default();
        break;
    case 3:
        s.medium = Medium::WirelessAdhoc;
        s.mobility_a = sim::StaticMobility{{955, 955}};
        s.mobility_b = sim::LinearWaypointMobility{1910.0, 40.0, 0};
        s.link = sim::LinkModel::wireless_adhoc_default();
        break;
    case 4:
        s.medium = Medium::WirelessAdhoc;
        s.mobility_a = sim::LinearWaypointMobility{955.0, 40.0, 0};
        s.mobility_b = sim::LinearWaypointMobility{955.0, 40.0, 0};
        s.link = sim::LinkModel::wireless_adhoc_default();
        break;
    default:
        throw ConfigError("scenario id must be 1..4");
    }
    return s;
}

struct DelayStats {
    double max_us = 0;
    double min_us = 0;
    double avg_us = 0;
    size_t samples = 0;
};

inline DelayStats make_stats(const std::vector<double>& values) {
    DelayStats st;
    st.samples = values.size();
    if (values.empty()) {
        return st;
    }
    st.min_us = values.front();
    st.max_us = values.front();
    double sum = 0;
    for (double v : values) {
        st.min_us = std::min(st.min_us, v);
        st.max_us = std::max(st.max_us, v);
        sum += v;
    }
    // the exact mean lies in [min, max]; keep the rounded one there too
    st.avg_us = std::clamp(sum / static_cast<double>(values.size()), st.min_us, st.max_us);
    return st;
}

/// Aggregated result of the repeated runs of one scenario.
struct MetricsReport {
    int scenario_id;
    std::string scenario;
    Medium medium;
    KemVariant variant;
    BenchMode crypto_mode;
    int runs;
    std::map<MsgKind, DelayStats> delays;
    std::vector<kem::OpTiming> op_timings;
    DelayStats handshake_completion;
};

/// Executes `runs` independent simulations of the scenario: in each run a
/// real handshake is performed (the wire sizes are whatever the channel
/// actually emitted), one data message goes each way, and the simulator
/// charges crypto costs plus link delays. Fully deterministic in the seed.
/// Per-run event traces are appended to *traces when given.
inline MetricsReport run_scenario(const Scenario& s, uint64_t master_seed,
                                  std::vector<sim::Trace>* traces = nullptr) {
    if (s.runs < 1) {
        throw ConfigError("scenario needs runs >= 1");
    }
    if (s.initiator != 'a' && s.initiator != 'b') {
        throw ConfigError("scenario initiator must be 'a' or 'b'");
    }

    const auto costs = s.crypto_mode == BenchMode::Injected ? sim::CryptoCostModel::injected()
                                                            : sim::CryptoCostModel::measured();

    std::map<MsgKind, std::vector<double>> delays;
    std::vector<double> completions;

    const std::string holder = s.initiator == 'a' ? "a" : "b";
    const std::string peer = s.initiator == 'a' ? "b" : "a";

    for (int run = 0; run < s.runs; ++run) {
        // fresh handshake seeds and waypoint seeds, all from the master seed
        SplitMix64 seeder(derive_seed(master_seed, "handshake", static_cast<uint64_t>(run)));
        std::vector<uint8_t> seed64(kem::kKeygenSeedLen), seed32(kem::kEncapsSeedLen);
        seeder.fill_bytes(seed64);
        seeder.fill_bytes(seed32);

        auto reseed = [&](const sim::MobilityModel& m, const char* tag) -> sim::MobilityModel {
            if (const auto* wp = std::get_if<sim::LinearWaypointMobility>(&m)) {
                auto moved = *wp;
                moved.rng_seed = derive_seed(master_seed, tag, static_cast<uint64_t>(run));
                return moved;
            }
            return m;
        };
        std::map<std::string, sim::MobilityModel> nodes = {
            {"a", reseed(s.mobility_a, "mobility-a")},
            {"b", reseed(s.mobility_b, "mobility-b")},
        };

        // the real protocol run that the simulation charges for
        auto [state, pk_msg] = channel::initiate(s.variant, seed64);
        auto [responder, ct_msg] = channel::respond(s.variant, pk_msg, seed32);
        auto holder_session = channel::complete(state, ct_msg);
        if (!holder_session.key_matches(responder)) {
            throw Error("handshake key agreement failed");
        }
        const std::vector<uint8_t> payload(s.data_message_bytes, 0xd1);
        auto data_ab = holder_session.seal(payload);
        if (responder.open(data_ab) != payload) {
            throw Error("data round trip failed");
        }
        auto data_ba = responder.seal(payload);
        if (holder_session.open(data_ba) != payload) {
            throw Error("data round trip failed");
        }

        const std::vector<sim::ScriptStep> script = {
            sim::ComputeStep{holder, s.variant, sim::CryptoOp::Keygen},
            sim::SendStep{holder, peer, MsgKind::PublicKey, pk_msg.size_bytes()},
            sim::ComputeStep{peer, s.variant, sim::CryptoOp::Encaps},
            sim::SendStep{peer, holder, MsgKind::Ciphertext, ct_msg.size_bytes()},
            sim::ComputeStep{holder, s.variant, sim::CryptoOp::Decaps},
            sim::SendStep{holder, peer, MsgKind::EncryptedData, data_ab.size_bytes()},
            sim::SendStep{peer, holder, MsgKind::EncryptedData, data_ba.size_bytes()},
        };

        sim::Simulation simulation(s.link, std::move(nodes), costs);
        const auto trace = simulation.run(script);

        for (const auto& [kind, values] : trace.delays_by_kind) {
            delays[kind].insert(delays[kind].end(), values.begin(), values.end());
        }
        completions.push_back(trace.step_completion_us[4]); // decaps finished
        if (traces != nullptr) {
            traces->push_back(trace);
        }
    }

    MetricsReport report{
        .scenario_id = s.id,
        .scenario = scenario_label(s),
        .medium = s.medium,
        .variant = s.variant,
        .crypto_mode = s.crypto_mode,
        .runs = s.runs,
        .delays = {},
        .op_timings = {},
        .handshake_completion = make_stats(completions),
    };
    for (const auto& [kind, values] : delays) {
        report.delays[kind] = make_stats(values);
    }
    for (auto op : kem::kAllOps) {
        report.op_timings.push_back(costs.timing(s.variant, op));
    }
    return report;
}

} // namespace pqcps::scenario
