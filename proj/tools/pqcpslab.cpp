// pqcpslab: benchmarks, hybrid-handshake demos, latency simulations, recorded
// delay replays and dataflow threat analysis behind one reproducible CLI.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pqcps/kem/bench.hpp"
#include "pqcps/scenario/budget.hpp"
#include "pqcps/scenario/report.hpp"
#include "pqcps/scenario/scenario.hpp"
#include "pqcps/threat/rules.hpp"

namespace {

using namespace pqcps;

constexpr uint64_t kDefaultSeed = 42;

uint64_t base_seed() {
    if (const char* env = std::getenv("PQCPSLAB_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw InputError("PQCPSLAB_SEED is not an integer");
        }
    }
    return kDefaultSeed;
}

void write_output(const std::string& doc, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << doc;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out.good()) {
        throw ConfigError("cannot open output path: " + path);
    }
    out << doc;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) {
        throw ConfigError("cannot read input file: " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CommonOpts {
    std::string format = "csv";
    std::string out;
    uint64_t seed = kDefaultSeed;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_markdown = true) {
    const std::string formats = with_markdown ? "csv, json or markdown" : "csv or json";
    cmd->add_option("--format", opts.format, "output format (" + formats + ")");
    cmd->add_option("-o,--out", opts.out, "output path (default: stdout)");
    cmd->add_option("--seed", opts.seed,
                    "master seed (default: PQCPSLAB_SEED or " + std::to_string(kDefaultSeed) +
                        ")");
}

int run_kem_bench(const CommonOpts& common, const std::string& variant_arg,
                  const std::string& op_arg, size_t iterations, const std::string& mode_arg,
                  double cycle_period_ns) {
    const auto mode =
        mode_arg == "injected" ? kem::BenchMode::Injected : kem::BenchMode::Measured;
    std::vector<kem::KemVariant> variants;
    if (variant_arg == "all") {
        variants.assign(std::begin(kem::kAllVariants), std::end(kem::kAllVariants));
    } else {
        variants.push_back(kem::variant_from_string(variant_arg));
    }
    std::vector<kem::CryptoOp> ops;
    if (op_arg == "all") {
        ops.assign(std::begin(kem::kAllOps), std::end(kem::kAllOps));
    } else {
        ops.push_back(kem::op_from_string(op_arg));
    }

    std::vector<kem::OpTiming> timings;
    for (auto v : variants) {
        for (auto op : ops) {
            timings.push_back(kem::bench_op(v, op, iterations, mode, cycle_period_ns));
        }
    }
    write_output(scenario::render_timings(timings, scenario::format_from_string(common.format)),
                 common.out);
    std::cerr << "kem-bench: " << timings.size() << " timings, mode=" << mode_arg
              << ", iterations=" << iterations << "\n";
    return 0;
}

int run_handshake(const CommonOpts& common, const std::string& variant_arg,
                  uint32_t data_bytes) {
    const auto variant = kem::variant_from_string(variant_arg);
    SplitMix64 seeder(derive_seed(common.seed, "handshake", 0));
    std::vector<uint8_t> seed64(kem::kKeygenSeedLen), seed32(kem::kEncapsSeedLen);
    seeder.fill_bytes(seed64);
    seeder.fill_bytes(seed32);

    auto [state, pk_msg] = channel::initiate(variant, seed64);
    auto [responder, ct_msg] = channel::respond(variant, pk_msg, seed32);
    auto holder = channel::complete(state, ct_msg);

    std::vector<uint8_t> payload(data_bytes, 0);
    SplitMix64(derive_seed(common.seed, "payload", 0)).fill_bytes(payload);
    auto data_msg = holder.seal(payload);
    const bool roundtrip = responder.open(data_msg) == payload;

    nlohmann::ordered_json j;
    j["scheme"] = kem::to_string(variant);
    j["public_key_bytes"] = pk_msg.size_bytes();
    j["ciphertext_bytes"] = ct_msg.size_bytes();
    j["encrypted_data_bytes"] = data_msg.size_bytes();
    j["data_overhead_bytes"] = channel::kDataOverheadBytes;
    j["keys_match"] = holder.key_matches(responder);
    j["data_roundtrip_ok"] = roundtrip;

    const auto fmt = scenario::format_from_string(common.format);
    std::string doc;
    if (fmt == scenario::ReportFormat::Json) {
        doc = j.dump(2) + "\n";
    } else if (fmt == scenario::ReportFormat::Csv) {
        doc = "field,value\n";
        for (const auto& [key, value] : j.items()) {
            doc += key + "," + (value.is_string() ? value.get<std::string>() : value.dump()) +
                   "\n";
        }
    } else {
        doc = "| field | value |\n|---|---|\n";
        for (const auto& [key, value] : j.items()) {
            doc += "| " + key + " | " +
                   (value.is_string() ? value.get<std::string>() : value.dump()) + " |\n";
        }
    }
    write_output(doc, common.out);
    std::cerr << "handshake: " << kem::to_string(variant)
              << (holder.key_matches(responder) ? " established" : " FAILED") << "\n";
    return holder.key_matches(responder) && roundtrip ? 0 : 1;
}

int run_simulate(const CommonOpts& common, scenario::Scenario s, const std::string& trace_path,
                 bool fail_on_budget) {
    std::vector<sim::Trace> traces;
    const auto report =
        scenario::run_scenario(s, common.seed, trace_path.empty() ? nullptr : &traces);
    const auto verdicts = scenario::check_budget(report, s.threshold_us);

    const auto fmt = scenario::format_from_string(common.format);
    std::string doc;
    if (fmt == scenario::ReportFormat::Json) {
        nlohmann::ordered_json j;
        j["report"] = nlohmann::ordered_json::parse(scenario::render_metrics(report, fmt));
        j["verdicts"] = nlohmann::ordered_json::parse(scenario::render_verdicts(verdicts, fmt));
        doc = j.dump(2) + "\n";
    } else {
        doc = scenario::render_metrics(report, fmt) + "\n" +
              scenario::render_verdicts(verdicts, fmt);
    }
    write_output(doc, common.out);

    if (!trace_path.empty()) {
        std::string ndjson;
        for (const auto& trace : traces) {
            ndjson += scenario::render_trace_ndjson(trace);
        }
        write_output(ndjson, trace_path);
    }

    int fails = 0;
    for (const auto& v : verdicts) {
        fails += !v.pass;
    }
    std::cerr << "simulate: scenario " << s.id << ", " << kem::to_string(s.variant) << ", "
              << report.runs << " runs, handshake avg "
              << scenario::format_us(report.handshake_completion.avg_us) << " us, " << fails
              << " budget FAIL(s)\n";
    return fail_on_budget && fails > 0 ? 3 : 0;
}

int run_replay(const CommonOpts& common, const std::string& data_path, double threshold_us,
               bool fail_on_budget) {
    const auto rows = scenario::load_recorded_delays(data_path);
    const auto verdicts = scenario::replay_verdicts(rows, threshold_us);
    write_output(scenario::render_verdicts(verdicts, scenario::format_from_string(common.format)),
                 common.out);
    int fails = 0;
    for (const auto& v : verdicts) {
        fails += !v.pass;
    }
    std::cerr << "replay: " << verdicts.size() << " verdicts, " << fails << " FAIL at "
              << scenario::format_us(threshold_us) << " us\n";
    return fail_on_budget && fails > 0 ? 3 : 0;
}

int run_threat_analyze(const CommonOpts& common, const std::string& model_path,
                       bool fail_on_findings) {
    const auto model = threat::parse_model(read_file(model_path));
    const auto findings = threat::analyze(model);
    const auto fmt = scenario::format_from_string(common.format);
    write_output(fmt == scenario::ReportFormat::Json ? threat::render_findings_json(findings)
                                                     : threat::render_findings_csv(findings),
                 common.out);
    std::cerr << "threat-analyze: " << findings.size() << " findings\n";
    return fail_on_findings && !findings.empty() ? 2 : 0;
}

scenario::Scenario scenario_from_options(CLI::App* cmd, int id, const std::string& variant_arg,
                                         const std::string& crypto_arg, int runs,
                                         double threshold_us, uint32_t data_bytes,
                                         const std::string& initiator,
                                         const std::string& config_path, uint64_t* seed) {
    int cfg_id = id;
    auto variant = variant_arg;
    auto crypto = crypto_arg;
    int cfg_runs = runs;
    double cfg_threshold = threshold_us;

    if (!config_path.empty()) {
        nlohmann::json cfg;
        try {
            cfg = nlohmann::json::parse(read_file(config_path));
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("scenario config is not valid JSON: ") + e.what());
        }
        // explicit flags win over the config file
        if (cmd->count("--scenario") == 0) cfg_id = cfg.value("id", cfg_id);
        if (cmd->count("--variant") == 0) variant = cfg.value("variant", variant);
        if (cmd->count("--crypto") == 0) crypto = cfg.value("crypto_mode", crypto);
        if (cmd->count("--runs") == 0) cfg_runs = cfg.value("runs", cfg_runs);
        if (cmd->count("--threshold-us") == 0)
            cfg_threshold = cfg.value("threshold_us", cfg_threshold);
        if (cmd->count("--seed") == 0) *seed = cfg.value("seed", *seed);
    }

    auto s = scenario::build_reference_scenario(cfg_id, kem::variant_from_string(variant));
    if (crypto == "injected") {
        s.crypto_mode = kem::BenchMode::Injected;
    } else if (crypto == "measured") {
        s.crypto_mode = kem::BenchMode::Measured;
    } else {
        throw InputError("crypto mode must be injected or measured");
    }
    s.runs = cfg_runs;
    s.threshold_us = cfg_threshold;
    s.data_message_bytes = data_bytes;
    s.initiator = initiator == "b" ? 'b' : 'a';
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"post-quantum key establishment lab for transportation-style P2P links"};
    app.require_subcommand(1);

    // kem-bench
    CommonOpts bench_common;
    std::string bench_variant = "all", bench_op = "all", bench_mode = "measured";
    size_t bench_iterations = 1000;
    double cycle_period_ns = kem::kReferenceCyclePeriodNs;
    auto* bench = app.add_subcommand("kem-bench", "time KEM operations");
    add_common(bench, bench_common);
    bench->add_option("--variant", bench_variant, "kyber512, kyber768, kyber1024 or all");
    bench->add_option("--op", bench_op, "keygen, encaps, decaps or all");
    bench->add_option("--iterations", bench_iterations, "samples per operation")
        ->check(CLI::PositiveNumber);
    bench->add_option("--mode", bench_mode, "measured or injected")
        ->check(CLI::IsMember({"measured", "injected"}));
    bench->add_option("--cycle-period-ns", cycle_period_ns,
                      "clock period used for cycle estimates");

    // handshake
    CommonOpts hs_common;
    hs_common.format = "json";
    std::string hs_variant = "kyber512";
    uint32_t hs_data_bytes = 32;
    auto* handshake = app.add_subcommand("handshake", "run one local hybrid handshake");
    add_common(handshake, hs_common);
    handshake->add_option("--variant", hs_variant, "kyber512, kyber768 or kyber1024");
    handshake->add_option("--data-bytes", hs_data_bytes, "demo payload size");

    // simulate
    CommonOpts sim_common;
    int sim_scenario = 1;
    std::string sim_variant = "kyber512", sim_crypto = "injected", sim_initiator = "a";
    std::string sim_trace, sim_config;
    int sim_runs = 5;
    double sim_threshold = 100000.0;
    uint32_t sim_data_bytes = 32;
    bool sim_fail_on_budget = false;
    auto* simulate = app.add_subcommand("simulate", "simulate one of the four P2P scenarios");
    add_common(simulate, sim_common);
    simulate->add_option("--scenario", sim_scenario, "scenario id (1..4)")
        ->check(CLI::Range(1, 4));
    simulate->add_option("--variant", sim_variant, "kyber512, kyber768 or kyber1024");
    simulate->add_option("--crypto", sim_crypto, "crypto cost mode: injected or measured");
    simulate->add_option("--runs", sim_runs, "independent repetitions")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--threshold-us", sim_threshold, "latency budget in microseconds");
    simulate->add_option("--data-bytes", sim_data_bytes, "application message size");
    simulate->add_option("--initiator", sim_initiator, "which node holds the key pair (a|b)")
        ->check(CLI::IsMember({"a", "b"}));
    simulate->add_option("--trace", sim_trace, "write per-run event traces (NDJSON)");
    simulate->add_option("--config", sim_config, "scenario config JSON file");
    simulate->add_flag("--fail-on-budget", sim_fail_on_budget,
                       "exit 3 when any verdict is FAIL");

    // replay
    CommonOpts replay_common;
    std::string replay_data;
    double replay_threshold = 100000.0;
    bool replay_fail_on_budget = false;
    auto* replay = app.add_subcommand("replay", "apply budget verdicts to recorded delays");
    add_common(replay, replay_common);
    replay->add_option("--data", replay_data, "recorded-delay CSV")->required();
    replay->add_option("--threshold-us", replay_threshold, "latency budget in microseconds");
    replay->add_flag("--fail-on-budget", replay_fail_on_budget,
                     "exit 3 when any verdict is FAIL");

    // threat-analyze
    CommonOpts threat_common;
    std::string threat_model;
    bool fail_on_findings = false;
    auto* threat_cmd = app.add_subcommand("threat-analyze", "analyze a dataflow model");
    add_common(threat_cmd, threat_common, /*with_markdown=*/false);
    threat_cmd->add_option("--model", threat_model, "dataflow model JSON")->required();
    threat_cmd->add_flag("--fail-on-findings", fail_on_findings,
                         "exit 2 when findings are present");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const uint64_t env_seed = base_seed();
        for (auto* opts : {&bench_common, &hs_common, &sim_common, &replay_common,
                           &threat_common}) {
            if (opts->seed == kDefaultSeed) {
                opts->seed = env_seed;
            }
        }

        if (bench->parsed()) {
            return run_kem_bench(bench_common, bench_variant, bench_op, bench_iterations,
                                 bench_mode, cycle_period_ns);
        }
        if (handshake->parsed()) {
            return run_handshake(hs_common, hs_variant, hs_data_bytes);
        }
        if (simulate->parsed()) {
            auto s = scenario_from_options(simulate, sim_scenario, sim_variant, sim_crypto,
                                           sim_runs, sim_threshold, sim_data_bytes,
                                           sim_initiator, sim_config, &sim_common.seed);
            return run_simulate(sim_common, s, sim_trace, sim_fail_on_budget);
        }
        if (replay->parsed()) {
            return run_replay(replay_common, replay_data, replay_threshold,
                              replay_fail_on_budget);
        }
        if (threat_cmd->parsed()) {
            return run_threat_analyze(threat_common, threat_model, fail_on_findings);
        }
    } catch (const pqcps::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
