#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "pqcps/errors.hpp"
#include "pqcps/scenario/scenario.hpp"

namespace pqcps::scenario {

/// One statistic transcribed from the recorded-delay table.
struct RecordedDelayRow {
    std::string scheme;   // kyber512 | kyber768 | kyber1024
    std::string scenario; // static-static | static-dynamic | dynamic-dynamic
    std::string medium;   // ethernet | adhoc-lte
    std::string kind;     // public_key | ciphertext | encrypted_data
    std::string stat;     // max | min | avg
    double value_us;
};

/// Verdict of one latency-budget check.
struct BudgetVerdict {
    std::string scheme;
    std::string scenario;
    std::string medium;
    std::string kind;
    double avg_us;
    double threshold_us;
    bool pass; // avg <= threshold, boundary inclusive
};

inline std::vector<RecordedDelayRow> load_recorded_delays(std::istream& in) {
    std::vector<RecordedDelayRow> rows;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (line_no == 1 && line.rfind("scheme,", 0) == 0) {
            continue; // header
        }
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 6) {
            throw ParseError("recorded-delay CSV line " + std::to_string(line_no) +
                             ": expected 6 fields, got " + std::to_string(fields.size()));
        }
        RecordedDelayRow row{fields[0], fields[1], fields[2], fields[3], fields[4], 0.0};
        try {
            row.value_us = std::stod(fields[5]);
        } catch (const std::exception&) {
            throw ParseError("recorded-delay CSV line " + std::to_string(line_no) +
                             ": bad value '" + fields[5] + "'");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<RecordedDelayRow> load_recorded_delays(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) {
        throw ParseError("cannot open recorded-delay CSV: " + path);
    }
    return load_recorded_delays(in);
}

/// One verdict per recorded average-delay row: PASS iff avg <= threshold.
inline std::vector<BudgetVerdict> replay_verdicts(const std::vector<RecordedDelayRow>& rows,
                                                  double threshold_us) {
    std::vector<BudgetVerdict> verdicts;
    for (const auto& row : rows) {
        if (row.stat != "avg") {
            continue;
        }
        verdicts.push_back({row.scheme, row.scenario, row.medium, row.kind, row.value_us,
                            threshold_us, row.value_us <= threshold_us});
    }
    return verdicts;
}

/// One verdict per message kind of a freshly simulated report.
inline std::vector<BudgetVerdict> check_budget(const MetricsReport& report,
                                               double threshold_us) {
    std::vector<BudgetVerdict> verdicts;
    for (auto kind : kAllMsgKinds) {
        const auto it = report.delays.find(kind);
        if (it == report.delays.end()) {
            continue;
        }
        verdicts.push_back({std::string(kem::to_string(report.variant)), report.scenario,
                            std::string(sim::to_string(report.medium)),
                            std::string(to_string(kind)), it->second.avg_us, threshold_us,
                            it->second.avg_us <= threshold_us});
    }
    return verdicts;
}

} // namespace pqcps::scenario
