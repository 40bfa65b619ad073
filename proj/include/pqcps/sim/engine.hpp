#pragma once

#include <cstdint>
#include <map>
#include <queue>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pqcps/errors.hpp"
#include "pqcps/msg_kind.hpp"
#include "pqcps/kem/bench.hpp"
#include "pqcps/sim/link.hpp"
#include "pqcps/sim/mobility.hpp"

namespace pqcps::sim {

using kem::BenchMode;
using kem::CryptoOp;
using kem::KemVariant;

/// Per-(variant, op) execution costs charged by the simulator. Injected
/// mode replays the reference table and is bit-reproducible; measured mode
/// benchmarks this host once.
class CryptoCostModel {
public:
    static CryptoCostModel injected() {
        CryptoCostModel m(BenchMode::Injected);
        for (auto v : kem::kAllVariants) {
            for (auto op : kem::kAllOps) {
                m.set(v, op, kem::bench_op(v, op, 1, BenchMode::Injected));
            }
        }
        return m;
    }

    static CryptoCostModel measured(size_t iterations = 200) {
        CryptoCostModel m(BenchMode::Measured);
        for (auto v : kem::kAllVariants) {
            for (auto op : kem::kAllOps) {
                m.set(v, op, kem::bench_op(v, op, iterations, BenchMode::Measured));
            }
        }
        return m;
    }

    /// Uniform cost for every operation; handy in tests.
    static CryptoCostModel constant(double cost_us) {
        CryptoCostModel m(BenchMode::Injected);
        for (auto v : kem::kAllVariants) {
            for (auto op : kem::kAllOps) {
                m.set(v, op, kem::OpTiming{v, op, 1, cost_us, cost_us, cost_us, cost_us,
                                           cost_us * 1000.0 / kem::kReferenceCyclePeriodNs});
            }
        }
        return m;
    }

    BenchMode mode() const noexcept { return mode_; }

    double cost_us(KemVariant v, CryptoOp op) const { return timing(v, op).mean_us; }

    const kem::OpTiming& timing(KemVariant v, CryptoOp op) const {
        return timings_[static_cast<size_t>(v)][static_cast<size_t>(op)];
    }

private:
    explicit CryptoCostModel(BenchMode mode) : mode_(mode) {}
    void set(KemVariant v, CryptoOp op, kem::OpTiming timing) {
        if (timing.mean_us < 0) {
            throw ConfigError("crypto cost must be >= 0");
        }
        timings_[static_cast<size_t>(v)][static_cast<size_t>(op)] = timing;
    }

    BenchMode mode_;
    kem::OpTiming timings_[3][3] = {};
};

struct ComputeStep {
    std::string node;
    KemVariant variant;
    CryptoOp op;
};

struct SendStep {
    std::string node;
    std::string dst;
    MsgKind kind;
    uint64_t size_bytes;
};

using ScriptStep = std::variant<ComputeStep, SendStep>;

struct TraceRecord {
    double time_us;
    std::string node;
    std::string action; // "compute:<op>", "send", "deliver"
    std::string msg_kind;
    uint64_t size_bytes;
    double delay_us;
};

struct Trace {
    std::vector<TraceRecord> records;
    std::vector<double> step_completion_us;
    double completion_us = 0;
    std::map<MsgKind, std::vector<double>> delays_by_kind;
};

/// Deterministic two-node discrete-event simulation of a scripted message
/// exchange. Steps form a causal chain: a step starts when the previous one
/// finishes, where a send finishes when its message is delivered. Events at
/// equal times execute in insertion order.
class Simulation {
public:
    Simulation(LinkModel link, std::map<std::string, MobilityModel> mobilities,
               CryptoCostModel crypto)
        : link_(std::move(link)), mobilities_(std::move(mobilities)), crypto_(std::move(crypto)) {}

    Trace run(std::span<const ScriptStep> script) {
        validate(script);
        Trace trace;
        trace.step_completion_us.resize(script.size(), 0.0);

        if (!script.empty()) {
            schedule(0.0, Event{0, EventKind::StepBegin, 0.0});
        }
        while (!queue_.empty()) {
            const auto entry = queue_.top();
            queue_.pop();
            dispatch(entry, script, trace);
        }
        queue_ = {};
        seq_ = 0;
        return trace;
    }

private:
    enum class EventKind { StepBegin, Deliver };

    struct Event {
        size_t step;
        EventKind kind;
        double delay_us; // for Deliver: the charged link delay
    };

    struct QueueEntry {
        double time_us;
        uint64_t seq;
        Event event;

        bool operator>(const QueueEntry& other) const {
            if (time_us != other.time_us) {
                return time_us > other.time_us;
            }
            return seq > other.seq;
        }
    };

    void validate(std::span<const ScriptStep> script) const {
        auto known = [this](const std::string& node) {
            return mobilities_.find(node) != mobilities_.end();
        };
        for (const auto& step : script) {
            if (const auto* c = std::get_if<ComputeStep>(&step)) {
                if (!known(c->node)) {
                    throw ConfigError("script references unknown node: " + c->node);
                }
            } else {
                const auto& s = std::get<SendStep>(step);
                if (!known(s.node)) {
                    throw ConfigError("script references unknown node: " + s.node);
                }
                if (!known(s.dst)) {
                    throw ConfigError("script references unknown node: " + s.dst);
                }
            }
        }
    }

    void schedule(double time_us, Event event) {
        queue_.push(QueueEntry{time_us, seq_++, event});
    }

    void dispatch(const QueueEntry& entry, std::span<const ScriptStep> script, Trace& trace) {
        const auto& step = script[entry.event.step];
        switch (entry.event.kind) {
        case EventKind::StepBegin:
            if (const auto* c = std::get_if<ComputeStep>(&step)) {
                begin_compute(entry, *c, script, trace);
            } else {
                begin_send(entry, std::get<SendStep>(step), trace);
            }
            break;
        case EventKind::Deliver:
            finish_send(entry, std::get<SendStep>(step), script, trace);
            break;
        }
    }

    void begin_compute(const QueueEntry& entry, const ComputeStep& step,
                       std::span<const ScriptStep> script, Trace& trace) {
        const double cost = crypto_.cost_us(step.variant, step.op);
        trace.records.push_back({entry.time_us, step.node,
                                 "compute:" + std::string(kem::to_string(step.op)), "", 0,
                                 cost});
        complete_step(entry.event.step, entry.time_us + cost, script, trace);
    }

    void begin_send(const QueueEntry& entry, const SendStep& step, Trace& trace) {
        const auto& src = mobilities_.at(step.node);
        const auto& dst = mobilities_.at(step.dst);
        const double dist = distance_at(src, dst, entry.time_us * 1e-6);
        double delay = link_.delay_us(step.size_bytes, dist, step.kind);
        delay += link_.mobile_endpoint_overhead_us *
                 (static_cast<int>(is_mobile(src)) + static_cast<int>(is_mobile(dst)));
        trace.records.push_back({entry.time_us, step.node, "send",
                                 std::string(to_string(step.kind)), step.size_bytes, delay});
        schedule(entry.time_us + delay, Event{entry.event.step, EventKind::Deliver, delay});
    }

    void finish_send(const QueueEntry& entry, const SendStep& step,
                     std::span<const ScriptStep> script, Trace& trace) {
        trace.records.push_back({entry.time_us, step.dst, "deliver",
                                 std::string(to_string(step.kind)), step.size_bytes,
                                 entry.event.delay_us});
        trace.delays_by_kind[step.kind].push_back(entry.event.delay_us);
        complete_step(entry.event.step, entry.time_us, script, trace);
    }

    void complete_step(size_t step, double time_us, std::span<const ScriptStep> script,
                       Trace& trace) {
        trace.step_completion_us[step] = time_us;
        trace.completion_us = std::max(trace.completion_us, time_us);
        if (step + 1 < script.size()) {
            schedule(time_us, Event{step + 1, EventKind::StepBegin, 0.0});
        }
    }

    LinkModel link_;
    std::map<std::string, MobilityModel> mobilities_;
    CryptoCostModel crypto_;
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> queue_;
    uint64_t seq_ = 0;
};

/// One-shot convenience wrapper.
inline Trace run_script(std::span<const ScriptStep> script, LinkModel link,
                        std::map<std::string, MobilityModel> mobilities,
                        CryptoCostModel crypto) {
    Simulation sim(std::move(link), std::move(mobilities), std::move(crypto));
    return sim.run(script);
}

} // namespace pqcps::sim
