#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>

#include "pqcps/errors.hpp"
#include "pqcps/msg_kind.hpp"

namespace pqcps::sim {

enum class Medium { Wired, WirelessAdhoc };

constexpr std::string_view to_string(Medium m) {
    return m == Medium::Wired ? "ethernet" : "adhoc-lte";
}

inline Medium medium_from_string(std::string_view s) {
    if (s == "ethernet" || s == "wired") return Medium::Wired;
    if (s == "adhoc-lte" || s == "wireless" || s == "adhoc lte (c-v2x)") {
        return Medium::WirelessAdhoc;
    }
    throw ParseError("unknown medium: " + std::string(s));
}

/// Per-message delay parameters. The delay splits into transmission
/// (8*size/bandwidth), propagation (distance/speed), and a fixed access
/// overhead that may be overridden per message class. When an MTU is set,
/// each fragment pays the access overhead.
struct LinkModel {
    Medium medium = Medium::Wired;
    double bandwidth_bps = 100e9;
    double propagation_speed_mps = 3.0e8;
    double fixed_overhead_us = 0.0;
    std::map<MsgKind, double> class_overhead_us; // optional per-class override
    std::optional<uint64_t> mtu_bytes;           // fragmentation off when unset
    // Extra access cost charged once per moving endpoint, which is how the
    // mobile scenarios end up slower than static ones at equal distance.
    double mobile_endpoint_overhead_us = 0.0;

    /// Ethernet preset calibrated so an 800-byte message at 1350 m costs
    /// 5.00 us: 0.064 (transmission) + 4.50 (propagation) + 0.44 (overhead).
    static LinkModel wired_default() {
        LinkModel link;
        link.medium = Medium::Wired;
        link.bandwidth_bps = 100e9;
        link.fixed_overhead_us = 0.44;
        return link;
    }

    /// Ad hoc LTE preset calibrated so the same 800-byte message costs
    /// about 1123 us: 118.52 + 4.50 + 1000.
    static LinkModel wireless_adhoc_default() {
        LinkModel link;
        link.medium = Medium::WirelessAdhoc;
        link.bandwidth_bps = 54e6;
        link.fixed_overhead_us = 1000.0;
        link.mobile_endpoint_overhead_us = 40.0;
        return link;
    }

    double overhead_for(MsgKind kind) const {
        const auto it = class_overhead_us.find(kind);
        return it == class_overhead_us.end() ? fixed_overhead_us : it->second;
    }

    double delay_us(uint64_t size_bytes, double distance_m, double overhead_us) const {
        if (distance_m < 0) {
            throw ConfigError("link delay requires distance >= 0");
        }
        const uint64_t fragments =
            mtu_bytes && *mtu_bytes > 0 && size_bytes > 0
                ? (size_bytes + *mtu_bytes - 1) / *mtu_bytes
                : 1;
        const double transmission_us = 8.0 * static_cast<double>(size_bytes) / bandwidth_bps * 1e6;
        const double propagation_us = distance_m / propagation_speed_mps * 1e6;
        return transmission_us + propagation_us + static_cast<double>(fragments) * overhead_us;
    }

    double delay_us(uint64_t size_bytes, double distance_m, MsgKind kind) const {
        return delay_us(size_bytes, distance_m, overhead_for(kind));
    }
};

/// Delay for one message of `size_bytes` over `distance_m`, using the
/// link's default per-message overhead.
inline double link_delay(const LinkModel& link, uint64_t size_bytes, double distance_m) {
    return link.delay_us(size_bytes, distance_m, link.fixed_overhead_us);
}

} // namespace pqcps::sim
