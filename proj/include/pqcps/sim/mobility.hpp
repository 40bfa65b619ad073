#pragma once

#include <cmath>
#include <cstdint>
#include <variant>
#include <vector>

#include "pqcps/errors.hpp"
#include "pqcps/rng.hpp"

namespace pqcps::sim {

struct Position {
    double x = 0;
    double y = 0;
};

inline double distance(Position a, Position b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

struct StaticMobility {
    Position pos;
};

/// Node traveling at constant speed between waypoints drawn uniformly
/// inside a square box with corner at the origin.
struct LinearWaypointMobility {
    double box_side_m;
    double speed_mps;
    uint64_t rng_seed;
};

using MobilityModel = std::variant<StaticMobility, LinearWaypointMobility>;

constexpr bool is_mobile(const MobilityModel& m) {
    return std::holds_alternative<LinearWaypointMobility>(m);
}

struct PathSegment {
    double t_begin_sec;
    double t_end_sec;
    Position from;
    Position to;
};

namespace mobility_detail {

/// Streams the deterministic waypoint path of one node.
class WaypointWalk {
public:
    explicit WaypointWalk(const LinearWaypointMobility& m)
        : model_(m), rng_(m.rng_seed), current_(draw()) {
        if (!(m.speed_mps > 0)) {
            throw ConfigError("waypoint mobility needs speed > 0");
        }
        if (!(m.box_side_m > 0)) {
            throw ConfigError("waypoint mobility needs a positive box side");
        }
    }

    /// Next segment of the path; durations are strictly positive.
    PathSegment next() {
        Position target = draw();
        while (distance(current_, target) < 1e-9) {
            target = draw();
        }
        const double duration = distance(current_, target) / model_.speed_mps;
        PathSegment seg{t_, t_ + duration, current_, target};
        t_ += duration;
        current_ = target;
        return seg;
    }

private:
    Position draw() { return {rng_.next_double(model_.box_side_m),
                              rng_.next_double(model_.box_side_m)}; }

    LinearWaypointMobility model_;
    SplitMix64 rng_;
    Position current_;
    double t_ = 0;
};

} // namespace mobility_detail

/// Position of a node at time t (seconds). Deterministic in the model and
/// its seed, and continuous in t.
inline Position position_at(const MobilityModel& model, double t_sec) {
    if (t_sec < 0) {
        throw ConfigError("position_at requires t >= 0");
    }
    if (const auto* fixed = std::get_if<StaticMobility>(&model)) {
        return fixed->pos;
    }
    mobility_detail::WaypointWalk walk(std::get<LinearWaypointMobility>(model));
    for (;;) {
        const PathSegment seg = walk.next();
        if (t_sec <= seg.t_end_sec) {
            const double f = (t_sec - seg.t_begin_sec) / (seg.t_end_sec - seg.t_begin_sec);
            return {seg.from.x + f * (seg.to.x - seg.from.x),
                    seg.from.y + f * (seg.to.y - seg.from.y)};
        }
    }
}

inline double distance_at(const MobilityModel& a, const MobilityModel& b, double t_sec) {
    return distance(position_at(a, t_sec), position_at(b, t_sec));
}

/// All path segments up to a horizon; empty for static nodes.
inline std::vector<PathSegment> waypoint_segments(const MobilityModel& model,
                                                  double horizon_sec) {
    std::vector<PathSegment> segments;
    if (const auto* m = std::get_if<LinearWaypointMobility>(&model)) {
        mobility_detail::WaypointWalk walk(*m);
        for (;;) {
            segments.push_back(walk.next());
            if (segments.back().t_end_sec >= horizon_sec) {
                break;
            }
        }
    }
    return segments;
}

} // namespace pqcps::sim
