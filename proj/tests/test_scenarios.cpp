#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "pqcps/scenario/budget.hpp"
#include "pqcps/scenario/report.hpp"
#include "pqcps/scenario/scenario.hpp"

using namespace pqcps;
using namespace pqcps::scenario;
using Catch::Approx;

namespace {
const std::string kTable9Csv = std::string(PQCPS_DATA_DIR) + "/table9_delays.csv";
}

TEST_CASE("reference scenarios resolve to their documented geometry") {
    const auto s1 = build_reference_scenario(1, KemVariant::Kyber512);
    CHECK(s1.medium == Medium::Wired);
    CHECK(scenario_label(s1) == "static-static");
    CHECK(sim::distance_at(s1.mobility_a, s1.mobility_b, 0.0) == Approx(1350.0));
    CHECK(s1.runs == 5);
    CHECK(s1.data_message_bytes == 32);
    CHECK(s1.threshold_us == 100000.0);

    const auto s2 = build_reference_scenario(2, KemVariant::Kyber512);
    CHECK(s2.medium == Medium::WirelessAdhoc);
    CHECK(scenario_label(s2) == "static-static");
    CHECK(sim::distance_at(s2.mobility_a, s2.mobility_b, 0.0) == Approx(1350.0));

    const auto s3 = build_reference_scenario(3, KemVariant::Kyber768);
    CHECK(s3.medium == Medium::WirelessAdhoc);
    CHECK(scenario_label(s3) == "static-dynamic");
    const auto* center = std::get_if<sim::StaticMobility>(&s3.mobility_a);
    REQUIRE(center != nullptr);
    CHECK(center->pos.x == 955.0);
    CHECK(center->pos.y == 955.0);
    const auto* wp3 = std::get_if<sim::LinearWaypointMobility>(&s3.mobility_b);
    REQUIRE(wp3 != nullptr);
    CHECK(wp3->box_side_m == 1910.0);
    CHECK(wp3->speed_mps == 40.0);

    const auto s4 = build_reference_scenario(4, KemVariant::Kyber1024);
    CHECK(scenario_label(s4) == "dynamic-dynamic");
    const auto* wp4a = std::get_if<sim::LinearWaypointMobility>(&s4.mobility_a);
    const auto* wp4b = std::get_if<sim::LinearWaypointMobility>(&s4.mobility_b);
    REQUIRE(wp4a != nullptr);
    REQUIRE(wp4b != nullptr);
    CHECK(wp4a->box_side_m == 955.0);
    CHECK(wp4b->box_side_m == 955.0);

    CHECK_THROWS_AS(build_reference_scenario(5, KemVariant::Kyber512), ConfigError);
}

TEST_CASE("wired static scenario reproduces the derived timeline") {
    const auto s = build_reference_scenario(1, KemVariant::Kyber512);
    const auto report = run_scenario(s, 42);

    CHECK(report.runs == 5);
    const auto& pk = report.delays.at(MsgKind::PublicKey);
    CHECK(pk.samples == 5);
    CHECK(pk.avg_us == Approx(5.00).margin(0.01));
    CHECK(report.handshake_completion.avg_us == Approx(172.00544).margin(1e-6));
    CHECK(report.handshake_completion.avg_us == Approx(172.0).margin(0.01));

    const auto& data = report.delays.at(MsgKind::EncryptedData);
    CHECK(data.samples == 10); // one message each way per run

    for (const auto& [kind, st] : report.delays) {
        CHECK(st.min_us <= st.avg_us);
        CHECK(st.avg_us <= st.max_us);
    }
}

TEST_CASE("identical master seeds give identical reports") {
    const auto s = build_reference_scenario(4, KemVariant::Kyber768);
    const auto a = run_scenario(s, 1234);
    const auto b = run_scenario(s, 1234);
    for (auto kind : kAllMsgKinds) {
        CHECK(a.delays.at(kind).avg_us == b.delays.at(kind).avg_us);
        CHECK(a.delays.at(kind).min_us == b.delays.at(kind).min_us);
        CHECK(a.delays.at(kind).max_us == b.delays.at(kind).max_us);
    }
    CHECK(a.handshake_completion.avg_us == b.handshake_completion.avg_us);

    const auto c = run_scenario(s, 99);
    CHECK(a.delays.at(MsgKind::PublicKey).avg_us != c.delays.at(MsgKind::PublicKey).avg_us);
}

TEST_CASE("wireless delays dominate wired delays kind by kind") {
    const auto wired = run_scenario(build_reference_scenario(1, KemVariant::Kyber512), 7);
    const auto wireless = run_scenario(build_reference_scenario(2, KemVariant::Kyber512), 7);
    for (auto kind : kAllMsgKinds) {
        CHECK(wireless.delays.at(kind).avg_us > wired.delays.at(kind).avg_us);
    }
}

TEST_CASE("dynamic-dynamic is at least as slow as static-static") {
    for (auto variant : kem::kAllVariants) {
        const auto st = run_scenario(build_reference_scenario(2, variant), 11);
        const auto dyn = run_scenario(build_reference_scenario(4, variant), 11);
        for (auto kind : kAllMsgKinds) {
            CHECK(dyn.delays.at(kind).avg_us >= st.delays.at(kind).avg_us);
        }
    }
}

TEST_CASE("public key delay grows with the variant") {
    double prev = 0;
    for (auto variant : kem::kAllVariants) {
        const auto report = run_scenario(build_reference_scenario(1, variant), 3);
        const double avg = report.delays.at(MsgKind::PublicKey).avg_us;
        CHECK(avg >= prev);
        prev = avg;
    }
}

TEST_CASE("bundled recorded-delay table replays the published verdict pattern") {
    const auto rows = load_recorded_delays(kTable9Csv);
    CHECK(rows.size() == 108); // 3 schemes x 4 scenarios x 3 kinds x 3 stats

    const auto verdicts = replay_verdicts(rows, 100000.0);
    CHECK(verdicts.size() == 36); // one per avg row

    int ethernet_pass = 0, lte_ct_fail = 0, k1024_pk_fail = 0, small_pk_pass = 0,
        lte_data_pass = 0, total_fail = 0;
    for (const auto& v : verdicts) {
        if (!v.pass) {
            ++total_fail;
        }
        if (v.medium == "ethernet") {
            CHECK(v.pass);
            ethernet_pass += v.pass;
        } else if (v.kind == "ciphertext") {
            CHECK(!v.pass);
            lte_ct_fail += !v.pass;
        } else if (v.kind == "public_key" && v.scheme == "kyber1024") {
            CHECK(!v.pass);
            k1024_pk_fail += !v.pass;
        } else if (v.kind == "public_key") {
            CHECK(v.pass);
            small_pk_pass += v.pass;
        } else if (v.kind == "encrypted_data") {
            CHECK(v.pass);
            lte_data_pass += v.pass;
        }
    }
    CHECK(ethernet_pass == 9);
    CHECK(lte_ct_fail == 9);
    CHECK(k1024_pk_fail == 3);
    CHECK(small_pk_pass == 6);
    CHECK(lte_data_pass == 9);
    CHECK(total_fail == 12);
}

TEST_CASE("budget checks use the inclusive boundary rule") {
    MetricsReport r{};
    r.scenario_id = 1;
    r.scenario = "static-static";
    r.medium = Medium::Wired;
    r.variant = KemVariant::Kyber512;
    r.crypto_mode = BenchMode::Injected;
    r.runs = 5;
    r.delays[MsgKind::PublicKey] = {5.0, 5.0, 5.0, 5};
    r.delays[MsgKind::Ciphertext] = {1001948.0, 1001948.0, 1001948.0, 5};
    r.delays[MsgKind::EncryptedData] = {100000.0, 100000.0, 100000.0, 5};

    const auto verdicts = check_budget(r, 100000.0);
    REQUIRE(verdicts.size() == 3);
    CHECK(verdicts[0].kind == "public_key");
    CHECK(verdicts[0].pass);
    CHECK(verdicts[1].kind == "ciphertext");
    CHECK(!verdicts[1].pass);
    CHECK(verdicts[2].kind == "encrypted_data");
    CHECK(verdicts[2].pass); // exactly at the threshold passes
}

TEST_CASE("malformed recorded-delay rows name the offending line") {
    std::stringstream bad("scheme,scenario,medium,kind,stat,value_us\nonly,three,fields\n");
    CHECK_THROWS_AS(load_recorded_delays(bad), ParseError);
    std::stringstream bad_value(
        "scheme,scenario,medium,kind,stat,value_us\nkyber512,static-static,ethernet,public_key,avg,abc\n");
    CHECK_THROWS_AS(load_recorded_delays(bad_value), ParseError);
}

TEST_CASE("renderers emit stable documents") {
    const auto verdicts = std::vector<BudgetVerdict>{};
    CHECK(render_verdicts(verdicts, ReportFormat::Csv) ==
          "scheme,scenario,medium,kind,avg_us,threshold_us,verdict\n");

    std::vector<kem::OpTiming> timings;
    for (auto op : kem::kAllOps) {
        timings.push_back(kem::bench_op(KemVariant::Kyber512, op, 1, BenchMode::Injected));
    }
    const auto md = render_timings(timings, ReportFormat::Markdown);
    CHECK(md.find("| kyber512 | keygen | 155365 | 44 |") != std::string::npos);
    CHECK(md.find("| kyber512 | encaps | 191358 | 53 |") != std::string::npos);
    CHECK(md.find("| kyber512 | decaps | 232691 | 65 |") != std::string::npos);

    const auto report = run_scenario(build_reference_scenario(1, KemVariant::Kyber512), 42);
    const auto csv1 = render_metrics(report, ReportFormat::Csv);
    const auto csv2 = render_metrics(report, ReportFormat::Csv);
    CHECK(csv1 == csv2);
    CHECK(csv1.rfind("scheme,scenario,medium,statistic,public_key_us,ciphertext_us,"
                     "encrypted_data_us\n", 0) == 0);
    const auto json1 = render_metrics(report, ReportFormat::Json);
    CHECK(json1.find("\"handshake_completion_us\"") != std::string::npos);
}

TEST_CASE("static-dynamic scenario shows run-to-run spread") {
    auto s = build_reference_scenario(3, KemVariant::Kyber512);
    const auto report = run_scenario(s, 2026);
    CHECK(report.scenario == "static-dynamic");
    const auto& pk = report.delays.at(MsgKind::PublicKey);
    CHECK(pk.samples == 5);
    // per-run waypoint positions differ, so delays spread around the
    // one-mobile-endpoint level: base 1000 + surcharge 40 + tx 118.5 + prop
    CHECK(pk.min_us < pk.max_us);
    CHECK(pk.min_us >= 1158.5);
    CHECK(pk.max_us <= 1163.1);
    CHECK(report.op_timings.size() == 3);
    CHECK(report.op_timings[0].mean_us == 44.0);
}
