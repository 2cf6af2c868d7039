#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <npsim/coding.hpp>
#include <npsim/core.hpp>
#include <npsim/metrics.hpp>
#include <npsim/schedule.hpp>

namespace npsim {

struct FailureModel {
    enum class Mode { None, Fixed, RandomPerSession, Exhaustive };

    Mode mode = Mode::None;
    FailureScenario fixed;  // used when mode == Fixed

    friend bool operator==(const FailureModel&, const FailureModel&) = default;
};

struct SimulationConfig {
    StrategyKind strategy = StrategyKind::Nps2Rotating;
    int n = 2;                            // working paths; session length equals n
    std::optional<PathId> dedicated_path; // Nps1Dedicated only, defaults to n
    int sessions = 1;
    FailureModel failure;
    std::size_t payload_width = 8;  // bytes per data unit
    std::uint64_t rng_seed = 0;

    friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

/// Applies defaults (dedicated path n when unset) and validates the whole
/// config; throws ConfigError with a message naming the offending field.
SimulationConfig resolved_config(SimulationConfig config);

/// Failure positions a run can visit, in a fixed order: none first, then the
/// extra path (0) when present, then working paths ascending.
std::vector<std::optional<PathId>> failure_positions(const SimulationConfig& config);

/// Sessions run_simulation will execute: config.sessions, times the number of
/// failure positions under Exhaustive.
int total_sessions(const SimulationConfig& config);

/// The path failing in the given session, per the config's failure model.
/// Random draws are a pure function of (seed, session).
std::optional<PathId> failure_for_session(const SimulationConfig& config, int session);

struct TraceEntry {
    int session = 0;
    int round = 0;
    PathId path = 0;
    bool dropped = false;
    Packet packet;                  // unset when dropped
    std::optional<int> data_index;  // set for data packets
};

using TransmissionTrace = std::vector<TraceEntry>;

/// Deterministic payloads for one session, keyed by (seed, session). Every
/// working source gets a full row even if its schedule never transmits it.
SessionSourceData generate_source_data(const SimulationConfig& config, int session);

struct SessionRun {
    std::vector<TraceEntry> trace;
    CollectorState collector;
};

/// Plays one session through the schedule: emits every slot in round-major
/// order, drops the whole session of the failed path, collects the rest.
/// The returned collector points at the caller's schedule.
SessionRun run_session(const SimulationConfig& config, int session,
                       const TransmissionSchedule& schedule, const SessionSourceData& data);

struct SimulationResult {
    TransmissionTrace trace;
    std::vector<SessionReport> reports;  // one per session, in order
};

SimulationResult run_simulation(const SimulationConfig& config);

}  // namespace npsim
