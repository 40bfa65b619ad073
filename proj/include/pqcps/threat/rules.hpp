#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pqcps/threat/catalog.hpp"
#include "pqcps/threat/model.hpp"

namespace pqcps::threat {

enum class StrideCategory {
    Spoofing,
    Tampering,
    Repudiation,
    InformationDisclosure,
    DenialOfService,
    ElevationOfPrivilege,
};

constexpr std::string_view to_string(StrideCategory c) {
    switch (c) {
    case StrideCategory::Spoofing: return "Spoofing";
    case StrideCategory::Tampering: return "Tampering";
    case StrideCategory::Repudiation: return "Repudiation";
    case StrideCategory::InformationDisclosure: return "Information Disclosure";
    case StrideCategory::DenialOfService: return "Denial of Service";
    case StrideCategory::ElevationOfPrivilege: return "Elevation of Privilege";
    }
    return "?";
}

struct ThreatFinding {
    std::string title;
    StrideCategory category;
    FlowMedium interaction;
    std::string priority; // always "High" under the current rule set
    std::string rule_id;
    std::string flow;
    std::string quantum_attack;
    std::string impact;
    std::string mitigation;
};

namespace rules_detail {

inline ThreatFinding make_finding(std::string title, StrideCategory category,
                                  const Flow& flow, const char* rule_id) {
    const auto& m = mitigation_for(title);
    return {std::move(title), category,       flow.medium,
            "High",           rule_id,        flow.name,
            std::string(m.quantum_attack),    std::string(m.impact),
            std::string(m.mitigation)};
}

inline bool auth_scheme_is_pre_quantum(const FlowAnnotations& a) {
    if (!a.auth_scheme) {
        return false;
    }
    const auto* entry = find_impact_entry(*a.auth_scheme);
    return entry != nullptr && entry->type == SchemeType::PublicKey &&
           entry->impact == "No longer secure";
}

inline bool hash_is_registered(const FlowAnnotations& a) {
    if (!a.integrity_hash) {
        return false;
    }
    const auto* entry = find_impact_entry(*a.integrity_hash);
    return entry != nullptr && entry->type == SchemeType::HashFunction;
}

} // namespace rules_detail

/// STRIDE-per-interaction pass over the model. Findings come out in rule
/// order (R1..R6), then flow declaration order, so the output is a pure
/// function of the model.
///
/// R1  every flow exposes its destination to remote code execution
/// R2  every flow allows redirecting the destination's execution flow
/// R3  wired flow authenticated by a quantum-broken public-key scheme
/// R4  flow whose integrity hash is collision-exposed under Grover
/// R5  flow without replay protection
/// R6  identity-asserting flow touching the trust border
inline std::vector<ThreatFinding> analyze(const DataflowModel& model) {
    using rules_detail::make_finding;
    std::vector<ThreatFinding> findings;

    for (const auto& flow : model.flows) { // R1
        findings.push_back(make_finding(flow.dst +
                                            " May be Subject to Elevation of Privilege Using "
                                            "Remote Code Execution",
                                        StrideCategory::ElevationOfPrivilege, flow, "R1"));
    }
    for (const auto& flow : model.flows) { // R2
        findings.push_back(make_finding("Elevation by Changing the Execution Flow in " +
                                            flow.dst,
                                        StrideCategory::ElevationOfPrivilege, flow, "R2"));
    }
    for (const auto& flow : model.flows) { // R3
        if (flow.medium == FlowMedium::Wired &&
            rules_detail::auth_scheme_is_pre_quantum(flow.annotations)) {
            findings.push_back(make_finding("Weak Authentication Scheme",
                                            StrideCategory::InformationDisclosure, flow, "R3"));
        }
    }
    for (const auto& flow : model.flows) { // R4
        if (rules_detail::hash_is_registered(flow.annotations)) {
            findings.push_back(
                make_finding("Collision Attacks", StrideCategory::Tampering, flow, "R4"));
        }
    }
    for (const auto& flow : model.flows) { // R5
        if (!flow.annotations.replay_protected) {
            findings.push_back(
                make_finding("Replay Attacks", StrideCategory::Tampering, flow, "R5"));
        }
    }
    for (const auto& flow : model.flows) { // R6
        if (flow.annotations.auth_scheme &&
            (model.inside_trust_border(flow.src) || model.inside_trust_border(flow.dst))) {
            findings.push_back(make_finding("Elevation Using Impersonation",
                                            StrideCategory::ElevationOfPrivilege, flow, "R6"));
        }
    }
    return findings;
}

namespace rules_detail {

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

} // namespace rules_detail

inline std::string render_findings_csv(const std::vector<ThreatFinding>& findings) {
    using rules_detail::csv_escape;
    std::string out = "title,category,interaction,priority,mitigation\n";
    for (const auto& f : findings) {
        out += csv_escape(f.title) + "," + std::string(to_string(f.category)) + "," +
               std::string(to_string(f.interaction)) + "," + f.priority + "," +
               csv_escape(f.mitigation) + "\n";
    }
    return out;
}

inline std::string render_findings_json(const std::vector<ThreatFinding>& findings) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& f : findings) {
        nlohmann::ordered_json row;
        row["title"] = f.title;
        row["category"] = to_string(f.category);
        row["interaction"] = to_string(f.interaction);
        row["priority"] = f.priority;
        row["rule_id"] = f.rule_id;
        row["flow"] = f.flow;
        row["quantum_attack"] = f.quantum_attack;
        row["impact"] = f.impact;
        row["mitigation"] = f.mitigation;
        j.push_back(row);
    }
    return j.dump(2) + "\n";
}

} // namespace pqcps::threat
