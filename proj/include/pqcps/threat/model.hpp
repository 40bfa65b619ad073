#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pqcps/errors.hpp"

namespace pqcps::threat {

enum class ElementKind { Process, ExternalEntity, DataStore };
enum class FlowMedium { Wired, Wireless };
enum class BoundaryKind { TrustBorder, TrustLine };

constexpr std::string_view to_string(ElementKind k) {
    switch (k) {
    case ElementKind::Process: return "Process";
    case ElementKind::ExternalEntity: return "ExternalEntity";
    case ElementKind::DataStore: return "DataStore";
    }
    return "?";
}

constexpr std::string_view to_string(FlowMedium m) {
    return m == FlowMedium::Wired ? "Wired" : "Wireless";
}

struct Element {
    std::string name;
    ElementKind kind;
};

struct FlowAnnotations {
    std::optional<std::string> auth_scheme;
    std::optional<std::string> integrity_hash;
    bool replay_protected = true;
};

struct Flow {
    std::string name;
    std::string src;
    std::string dst;
    FlowMedium medium;
    FlowAnnotations annotations;
};

struct Boundary {
    std::string name;
    BoundaryKind kind;
    std::vector<std::string> members;       // TrustBorder: enclosed elements
    std::vector<std::string> crossed_flows; // TrustLine: flows crossing it
};

struct DataflowModel {
    std::vector<Element> elements;
    std::vector<Flow> flows;
    std::vector<Boundary> boundaries;

    const Element* find_element(std::string_view name) const {
        for (const auto& e : elements) {
            if (e.name == name) {
                return &e;
            }
        }
        return nullptr;
    }

    /// True when the element is a member of some trust-border boundary.
    bool inside_trust_border(std::string_view element) const {
        for (const auto& b : boundaries) {
            if (b.kind != BoundaryKind::TrustBorder) {
                continue;
            }
            for (const auto& m : b.members) {
                if (m == element) {
                    return true;
                }
            }
        }
        return false;
    }
};

namespace model_detail {

inline ElementKind element_kind_from(const std::string& s, const std::string& element) {
    if (s == "Process") return ElementKind::Process;
    if (s == "ExternalEntity") return ElementKind::ExternalEntity;
    if (s == "DataStore") return ElementKind::DataStore;
    throw ParseError("element '" + element + "': unknown kind '" + s + "'");
}

inline FlowMedium medium_from(const std::string& s, const std::string& flow) {
    if (s == "Wired") return FlowMedium::Wired;
    if (s == "Wireless") return FlowMedium::Wireless;
    throw ParseError("flow '" + flow + "': unknown medium '" + s + "'");
}

inline BoundaryKind boundary_kind_from(const std::string& s, const std::string& boundary) {
    if (s == "TrustBorder") return BoundaryKind::TrustBorder;
    if (s == "TrustLine") return BoundaryKind::TrustLine;
    throw ParseError("boundary '" + boundary + "': unknown kind '" + s + "'");
}

} // namespace model_detail

/// Parses and validates a dataflow model from its JSON form. Syntax errors
/// carry the parser's position; semantic errors name the offending entity.
inline DataflowModel parse_model(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("model is not valid JSON: ") + e.what());
    }

    DataflowModel model;
    try {
        for (const auto& e : doc.value("elements", nlohmann::json::array())) {
            Element element;
            element.name = e.at("name").get<std::string>();
            element.kind =
                model_detail::element_kind_from(e.at("kind").get<std::string>(), element.name);
            model.elements.push_back(std::move(element));
        }
        for (const auto& f : doc.value("flows", nlohmann::json::array())) {
            Flow flow;
            flow.name = f.at("name").get<std::string>();
            flow.src = f.at("src").get<std::string>();
            flow.dst = f.at("dst").get<std::string>();
            flow.medium =
                model_detail::medium_from(f.at("medium").get<std::string>(), flow.name);
            if (f.contains("annotations")) {
                const auto& a = f.at("annotations");
                if (a.contains("auth_scheme")) {
                    flow.annotations.auth_scheme = a.at("auth_scheme").get<std::string>();
                }
                if (a.contains("integrity_hash")) {
                    flow.annotations.integrity_hash = a.at("integrity_hash").get<std::string>();
                }
                flow.annotations.replay_protected = a.value("replay_protected", true);
            }
            model.flows.push_back(std::move(flow));
        }
        for (const auto& b : doc.value("boundaries", nlohmann::json::array())) {
            Boundary boundary;
            boundary.name = b.at("name").get<std::string>();
            boundary.kind =
                model_detail::boundary_kind_from(b.at("kind").get<std::string>(), boundary.name);
            for (const auto& m : b.value("members", nlohmann::json::array())) {
                boundary.members.push_back(m.get<std::string>());
            }
            for (const auto& f : b.value("crossed_flows", nlohmann::json::array())) {
                boundary.crossed_flows.push_back(f.get<std::string>());
            }
            model.boundaries.push_back(std::move(boundary));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed model document: ") + e.what());
    }

    // semantic validation
    std::set<std::string_view> names;
    for (const auto& e : model.elements) {
        if (!names.insert(e.name).second) {
            throw ParseError("duplicate element name: " + e.name);
        }
    }
    std::set<std::string_view> flow_names;
    for (const auto& f : model.flows) {
        if (!flow_names.insert(f.name).second) {
            throw ParseError("duplicate flow name: " + f.name);
        }
        if (model.find_element(f.src) == nullptr) {
            throw ParseError("flow '" + f.name + "' references undeclared element: " + f.src);
        }
        if (model.find_element(f.dst) == nullptr) {
            throw ParseError("flow '" + f.name + "' references undeclared element: " + f.dst);
        }
    }
    for (const auto& b : model.boundaries) {
        for (const auto& m : b.members) {
            if (model.find_element(m) == nullptr) {
                throw ParseError("boundary '" + b.name +
                                 "' references undeclared element: " + m);
            }
        }
        for (const auto& f : b.crossed_flows) {
            if (flow_names.find(f) == flow_names.end()) {
                throw ParseError("boundary '" + b.name + "' references undeclared flow: " + f);
            }
        }
    }
    return model;
}

} // namespace pqcps::threat
