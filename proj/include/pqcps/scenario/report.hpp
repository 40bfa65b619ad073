#pragma once

#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqcps/scenario/budget.hpp"
#include "pqcps/scenario/scenario.hpp"

namespace pqcps::scenario {

enum class ReportFormat { Csv, Json, Markdown };

inline ReportFormat format_from_string(std::string_view s) {
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json") return ReportFormat::Json;
    if (s == "markdown" || s == "md") return ReportFormat::Markdown;
    throw InputError("unknown report format: " + std::string(s));
}

/// Microsecond values rendered with up to 4 decimals, trailing zeros
/// trimmed, so tables read like the published ones (5.0027, 1001948).
inline std::string format_us(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", value);
    std::string s(buf);
    while (!s.empty() && s.back() == '0') {
        s.pop_back();
    }
    if (!s.empty() && s.back() == '.') {
        s.pop_back();
    }
    return s;
}

namespace report_detail {

inline const DelayStats& stats_for(const MetricsReport& r, MsgKind kind) {
    static const DelayStats empty;
    const auto it = r.delays.find(kind);
    return it == r.delays.end() ? empty : it->second;
}

inline double stat_value(const DelayStats& st, std::string_view stat) {
    if (stat == "max") return st.max_us;
    if (stat == "min") return st.min_us;
    return st.avg_us;
}

} // namespace report_detail

/// Delay table in the recorded-report shape: one row per statistic with a
/// column per message kind.
inline std::string render_metrics(const MetricsReport& r, ReportFormat format) {
    using report_detail::stat_value;
    using report_detail::stats_for;
    static constexpr std::string_view kStats[] = {"max", "min", "avg"};

    if (format == ReportFormat::Json) {
        nlohmann::ordered_json j;
        j["scheme"] = kem::to_string(r.variant);
        j["scenario_id"] = r.scenario_id;
        j["scenario"] = r.scenario;
        j["medium"] = sim::to_string(r.medium);
        j["crypto_mode"] = r.crypto_mode == BenchMode::Injected ? "injected" : "measured";
        j["runs"] = r.runs;
        for (auto kind : kAllMsgKinds) {
            const auto& st = stats_for(r, kind);
            nlohmann::ordered_json stats;
            stats["max_us"] = st.max_us;
            stats["min_us"] = st.min_us;
            stats["avg_us"] = st.avg_us;
            stats["samples"] = st.samples;
            j["delays"][std::string(to_string(kind))] = stats;
        }
        j["handshake_completion_us"] = {{"max", r.handshake_completion.max_us},
                                        {"min", r.handshake_completion.min_us},
                                        {"avg", r.handshake_completion.avg_us}};
        for (const auto& t : r.op_timings) {
            nlohmann::ordered_json op;
            op["op"] = kem::to_string(t.op);
            op["cycle_estimate"] = t.cycle_estimate;
            op["time_us"] = t.mean_us;
            op["median_us"] = t.median_us;
            op["min_us"] = t.min_us;
            op["max_us"] = t.max_us;
            op["samples"] = t.samples;
            j["crypto_ops"].push_back(op);
        }
        return j.dump(2) + "\n";
    }

    std::string out;
    if (format == ReportFormat::Csv) {
        out += "scheme,scenario,medium,statistic,public_key_us,ciphertext_us,encrypted_data_us\n";
        for (auto stat : kStats) {
            out += std::string(kem::to_string(r.variant)) + "," + r.scenario + "," +
                   std::string(sim::to_string(r.medium)) + "," + std::string(stat);
            for (auto kind : kAllMsgKinds) {
                out += "," + format_us(stat_value(stats_for(r, kind), stat));
            }
            out += "\n";
        }
        return out;
    }

    out += "| scheme | scenario | medium | statistic | public_key_us | ciphertext_us | "
           "encrypted_data_us |\n";
    out += "|---|---|---|---|---|---|---|\n";
    for (auto stat : kStats) {
        out += "| " + std::string(kem::to_string(r.variant)) + " | " + r.scenario + " | " +
               std::string(sim::to_string(r.medium)) + " | " + std::string(stat);
        for (auto kind : kAllMsgKinds) {
            out += " | " + format_us(stat_value(stats_for(r, kind), stat));
        }
        out += " |\n";
    }
    return out;
}

/// Execution-time table: op, cycle_estimate, time_us.
inline std::string render_timings(std::span<const kem::OpTiming> timings,
                                  ReportFormat format) {
    if (format == ReportFormat::Json) {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& t : timings) {
            nlohmann::ordered_json op;
            op["scheme"] = kem::to_string(t.variant);
            op["op"] = kem::to_string(t.op);
            op["cycle_estimate"] = t.cycle_estimate;
            op["time_us"] = t.mean_us;
            op["median_us"] = t.median_us;
            op["min_us"] = t.min_us;
            op["max_us"] = t.max_us;
            op["samples"] = t.samples;
            j.push_back(op);
        }
        return j.dump(2) + "\n";
    }

    std::string out;
    if (format == ReportFormat::Csv) {
        out += "scheme,op,cycle_estimate,time_us\n";
        for (const auto& t : timings) {
            out += std::string(kem::to_string(t.variant)) + "," +
                   std::string(kem::to_string(t.op)) + "," + format_us(t.cycle_estimate) + "," +
                   format_us(t.mean_us) + "\n";
        }
        return out;
    }

    out += "| scheme | op | cycle_estimate | time_us |\n|---|---|---|---|\n";
    for (const auto& t : timings) {
        out += "| " + std::string(kem::to_string(t.variant)) + " | " +
               std::string(kem::to_string(t.op)) + " | " + format_us(t.cycle_estimate) + " | " +
               format_us(t.mean_us) + " |\n";
    }
    return out;
}

inline std::string render_verdicts(std::span<const BudgetVerdict> verdicts,
                                   ReportFormat format) {
    if (format == ReportFormat::Json) {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& v : verdicts) {
            nlohmann::ordered_json row;
            row["scheme"] = v.scheme;
            row["scenario"] = v.scenario;
            row["medium"] = v.medium;
            row["kind"] = v.kind;
            row["avg_us"] = v.avg_us;
            row["threshold_us"] = v.threshold_us;
            row["verdict"] = v.pass ? "PASS" : "FAIL";
            j.push_back(row);
        }
        return j.dump(2) + "\n";
    }

    std::string out;
    if (format == ReportFormat::Csv) {
        out += "scheme,scenario,medium,kind,avg_us,threshold_us,verdict\n";
        for (const auto& v : verdicts) {
            out += v.scheme + "," + v.scenario + "," + v.medium + "," + v.kind + "," +
                   format_us(v.avg_us) + "," + format_us(v.threshold_us) + "," +
                   (v.pass ? "PASS" : "FAIL") + "\n";
        }
        return out;
    }

    out += "| scheme | scenario | medium | kind | avg_us | threshold_us | verdict |\n";
    out += "|---|---|---|---|---|---|---|\n";
    for (const auto& v : verdicts) {
        out += "| " + v.scheme + " | " + v.scenario + " | " + v.medium + " | " + v.kind +
               " | " + format_us(v.avg_us) + " | " + format_us(v.threshold_us) + " | " +
               (v.pass ? "PASS" : "FAIL") + " |\n";
    }
    return out;
}

/// Event trace as newline-delimited JSON records.
inline std::string render_trace_ndjson(const sim::Trace& trace) {
    std::string out;
    for (const auto& rec : trace.records) {
        nlohmann::ordered_json j;
        j["time_us"] = rec.time_us;
        j["node"] = rec.node;
        j["action"] = rec.action;
        j["msg_kind"] = rec.msg_kind;
        j["size_bytes"] = rec.size_bytes;
        j["delay_us"] = rec.delay_us;
        out += j.dump() + "\n";
    }
    return out;
}

} // namespace pqcps::scenario
