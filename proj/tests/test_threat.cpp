#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <tuple>

#include "pqcps/threat/rules.hpp"

using namespace pqcps;
using namespace pqcps::threat;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

DataflowModel bundled_etc_model() {
    return parse_model(read_file(std::string(PQCPS_DATA_DIR) + "/etc_model.json"));
}

using Tuple = std::tuple<std::string, StrideCategory, FlowMedium>;

bool contains(const std::vector<ThreatFinding>& findings, const Tuple& expected) {
    for (const auto& f : findings) {
        if (f.title == std::get<0>(expected) && f.category == std::get<1>(expected) &&
            f.interaction == std::get<2>(expected) && f.priority == "High") {
            return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("minimal model parses") {
    const auto model = parse_model(R"({"elements":[{"name":"box","kind":"Process"}]})");
    CHECK(model.elements.size() == 1);
    CHECK(model.flows.empty());
    CHECK(analyze(model).empty());
}

TEST_CASE("validation names the offender") {
    CHECK_THROWS_AS(parse_model("{nope"), ParseError);

    const auto undeclared = R"({
      "elements": [{"name": "a", "kind": "Process"}],
      "flows": [{"name": "f", "src": "a", "dst": "ghost", "medium": "Wired"}]
    })";
    CHECK_THROWS_WITH(parse_model(undeclared),
                      Catch::Matchers::ContainsSubstring("ghost"));

    const auto duplicate = R"({
      "elements": [{"name": "a", "kind": "Process"}, {"name": "a", "kind": "DataStore"}]
    })";
    CHECK_THROWS_WITH(parse_model(duplicate), Catch::Matchers::ContainsSubstring("duplicate"));

    const auto bad_kind = R"({"elements": [{"name": "a", "kind": "Cloud"}]})";
    CHECK_THROWS_AS(parse_model(bad_kind), ParseError);
}

TEST_CASE("bundled model matches the documented shape") {
    const auto model = bundled_etc_model();
    REQUIRE(model.elements.size() == 3);
    for (const auto& e : model.elements) {
        CHECK(e.kind == ElementKind::Process);
    }
    REQUIRE(model.flows.size() == 5);
    int wired = 0, wireless = 0;
    for (const auto& f : model.flows) {
        (f.medium == FlowMedium::Wired ? wired : wireless)++;
    }
    CHECK(wired == 2);
    CHECK(wireless == 3);
    REQUIRE(model.boundaries.size() == 2);
    CHECK(model.boundaries[0].kind == BoundaryKind::TrustBorder);
    CHECK(model.boundaries[0].members.size() == 2);
    CHECK(model.boundaries[1].kind == BoundaryKind::TrustLine);
    CHECK(model.boundaries[1].crossed_flows.size() == 3);
    CHECK(model.inside_trust_border("Payment Administrative Center"));
    CHECK(!model.inside_trust_border("Light Vehicle OBE"));
}

TEST_CASE("analysis of the bundled model covers the full report table") {
    const auto findings = analyze(bundled_etc_model());

    const Tuple expected[] = {
        {"Weak Authentication Scheme", StrideCategory::InformationDisclosure,
         FlowMedium::Wired},
        {"Collision Attacks", StrideCategory::Tampering, FlowMedium::Wired},
        {"Replay Attacks", StrideCategory::Tampering, FlowMedium::Wired},
        {"Elevation Using Impersonation", StrideCategory::ElevationOfPrivilege,
         FlowMedium::Wired},
        {"ITS Roadway Payment Equipment May be Subject to Elevation of Privilege Using "
         "Remote Code Execution",
         StrideCategory::ElevationOfPrivilege, FlowMedium::Wireless},
        {"Elevation by Changing the Execution Flow in Light Vehicle OBE",
         StrideCategory::ElevationOfPrivilege, FlowMedium::Wireless},
        {"ITS Roadway Payment Equipment May be Subject to Elevation of Privilege Using "
         "Remote Code Execution",
         StrideCategory::ElevationOfPrivilege, FlowMedium::Wired},
        {"Elevation by Changing the Execution Flow in ITS Roadway Payment Equipment",
         StrideCategory::ElevationOfPrivilege, FlowMedium::Wired},
        {"Payment Administrative Center May be Subject to Elevation of Privilege Using "
         "Remote Code Execution",
         StrideCategory::ElevationOfPrivilege, FlowMedium::Wireless},
        {"Elevation by Changing the Execution Flow in Payment Administrative Center",
         StrideCategory::ElevationOfPrivilege, FlowMedium::Wireless},
        {"Light Vehicle OBE May be Subject to Elevation of Privilege Using Remote Code "
         "Execution",
         StrideCategory::ElevationOfPrivilege, FlowMedium::Wireless},
    };
    for (const auto& tuple : expected) {
        INFO("missing: " << std::get<0>(tuple));
        CHECK(contains(findings, tuple));
    }

    // every finding is justified by exactly one rule and maps to a mitigation
    for (const auto& f : findings) {
        CHECK(!f.rule_id.empty());
        CHECK_NOTHROW(mitigation_for(f.title));
        CHECK(f.mitigation == std::string(mitigation_for(f.title).mitigation));
    }
}

TEST_CASE("analysis is deterministic and ordered by rule then flow") {
    const auto model = bundled_etc_model();
    const auto a = analyze(model);
    const auto b = analyze(model);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].title == b[i].title);
        CHECK(a[i].rule_id == b[i].rule_id);
        CHECK(a[i].flow == b[i].flow);
    }
    for (size_t i = 1; i < a.size(); ++i) {
        CHECK(a[i - 1].rule_id <= a[i].rule_id);
    }
}

TEST_CASE("adding a flow never removes findings") {
    auto model = bundled_etc_model();
    const auto before = analyze(model);
    model.flows.push_back({"firmware update", "Payment Administrative Center",
                           "Light Vehicle OBE", FlowMedium::Wireless, {}});
    const auto after = analyze(model);
    CHECK(after.size() > before.size());
    for (const auto& f : before) {
        CHECK(contains(after, {f.title, f.category, f.interaction}));
    }
}

TEST_CASE("mitigation table rows are reachable by title") {
    CHECK(std::string(mitigation_for("Weak Authentication Scheme").mitigation) ==
          "Use PQC algorithms, such as CRYSTALS-Kyber or Falcon");
    CHECK(std::string(mitigation_for("Collision Attacks").mitigation) ==
          "Use hash-based PQC algorithms like SPHINCS+");
    CHECK(std::string(mitigation_for("Replay Attacks").mitigation)
              .find("time-based protocols and secure communication channels with PQC") !=
          std::string::npos);
    CHECK(std::string(mitigation_for("Elevation Using Impersonation").mitigation) ==
          "Adopt lattice-based PQC schemes (i.e., CRYSTALS-Kyber)");
    // per-element elevation titles normalize onto their class
    CHECK(std::string(
              mitigation_for("Elevation by Changing the Execution Flow in Light Vehicle OBE")
                  .impact) == "System takeover and data breaches");
    CHECK(std::string(mitigation_for("Light Vehicle OBE May be Subject to Elevation of "
                                     "Privilege Using Remote Code Execution")
                          .vulnerability) == "Elevation by Changing Execution Flow");
    CHECK_THROWS_AS(mitigation_for("Alien Abduction"), LookupError);
}

TEST_CASE("impact registry answers for the five scheme families") {
    CHECK(impact_of("AES") == "Larger key sizes needed");
    CHECK(impact_of("SHA-2") == "Longer output needed");
    CHECK(impact_of("SHA-3") == "Longer output needed");
    CHECK(impact_of("RSA") == "No longer secure");
    CHECK(impact_of("ECDSA") == "No longer secure");
    CHECK(impact_of("ECDH") == "No longer secure");
    CHECK(impact_of("DSA") == "No longer secure");
    CHECK(impact_of("SHA-256") == "Longer output needed"); // alias used by the model
    CHECK_THROWS_AS(impact_of("ROT13"), LookupError);
    CHECK(kImpactRegistry.size() == 5);
}

TEST_CASE("findings render to csv and json") {
    const auto findings = analyze(bundled_etc_model());
    const auto csv = render_findings_csv(findings);
    CHECK(csv.rfind("title,category,interaction,priority,mitigation\n", 0) == 0);
    CHECK(csv.find("Weak Authentication Scheme,Information Disclosure,Wired,High,") !=
          std::string::npos);
    // mitigation text containing commas is quoted
    CHECK(csv.find("\"Use PQC algorithms, such as CRYSTALS-Kyber or Falcon\"") !=
          std::string::npos);

    const auto json = render_findings_json(findings);
    CHECK(json.find("\"rule_id\": \"R1\"") != std::string::npos);
    CHECK(render_findings_json(findings) == json);
}
