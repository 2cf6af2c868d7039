#include <npsim/transport.hpp>

#include <string>
#include <utility>

#include <npsim/rng.hpp>

namespace npsim {

namespace {

// Stream tags for derive_seed: "data" and "fail" as ASCII.
constexpr std::uint64_t kDataTag = 0x64617461;
constexpr std::uint64_t kFailTag = 0x6661696c;

DataUnit draw_unit(SplitMix64& gen, std::size_t width) {
    DataUnit unit(width);
    std::size_t i = 0;
    while (i < width) {
        std::uint64_t word = gen.next();
        for (int b = 0; b < 8 && i < width; ++b, ++i) {
            unit[i] = static_cast<std::uint8_t>(word & 0xff);
            word >>= 8;
        }
    }
    return unit;
}

}  // namespace

SimulationConfig resolved_config(SimulationConfig config) {
    if (config.strategy == StrategyKind::Nps1Dedicated && !config.dedicated_path) {
        config.dedicated_path = config.n;
    }
    if (config.n < 2) {
        throw ConfigError("at least two disjoint paths are required, got " +
                          std::to_string(config.n));
    }
    if (config.sessions < 1) {
        throw ConfigError("sessions must be at least 1");
    }
    if (config.payload_width < 1) {
        throw ConfigError("payload width must be at least 1 byte");
    }
    if (config.dedicated_path) {
        if (config.strategy != StrategyKind::Nps1Dedicated) {
            throw ConfigError("dedicated path applies only to the nps1-dedicated strategy");
        }
        if (*config.dedicated_path < 1 || *config.dedicated_path > config.n) {
            throw ConfigError("dedicated path " + std::to_string(*config.dedicated_path) +
                              " outside 1.." + std::to_string(config.n));
        }
    }
    if (config.failure.mode == FailureModel::Mode::Fixed) {
        if (!config.failure.fixed.failed_path) {
            throw ConfigError("fixed failure mode requires a path");
        }
        const PathId f = *config.failure.fixed.failed_path;
        const bool extra_ok = config.strategy == StrategyKind::Nps1Extra && f == kExtraPath;
        if (!extra_ok && (f < 1 || f > config.n)) {
            throw ConfigError("failed path " + std::to_string(f) +
                              " is not a path of this configuration");
        }
        for (int s : config.failure.fixed.sessions_affected) {
            if (s < 1) throw ConfigError("failure sessions must be 1-based");
        }
    } else if (config.failure.fixed != FailureScenario{}) {
        throw ConfigError("failure scenario given without fixed failure mode");
    }
    return config;
}

std::vector<std::optional<PathId>> failure_positions(const SimulationConfig& config) {
    std::vector<std::optional<PathId>> positions{std::nullopt};
    if (config.strategy == StrategyKind::Nps1Extra) positions.push_back(kExtraPath);
    for (PathId p = 1; p <= config.n; ++p) positions.push_back(p);
    return positions;
}

int total_sessions(const SimulationConfig& config) {
    if (config.failure.mode == FailureModel::Mode::Exhaustive) {
        return config.sessions * static_cast<int>(failure_positions(config).size());
    }
    return config.sessions;
}

std::optional<PathId> failure_for_session(const SimulationConfig& config, int session) {
    switch (config.failure.mode) {
        case FailureModel::Mode::None:
            return std::nullopt;
        case FailureModel::Mode::Fixed:
            if (config.failure.fixed.affects(session)) return config.failure.fixed.failed_path;
            return std::nullopt;
        case FailureModel::Mode::RandomPerSession: {
            const auto positions = failure_positions(config);
            SplitMix64 gen(derive_seed(config.rng_seed, kFailTag,
                                       static_cast<std::uint64_t>(session)));
            return positions[gen.bounded(positions.size())];
        }
        case FailureModel::Mode::Exhaustive: {
            const auto positions = failure_positions(config);
            return positions[static_cast<std::size_t>(session - 1) % positions.size()];
        }
    }
    throw std::logic_error("unknown failure mode");
}

SessionSourceData generate_source_data(const SimulationConfig& config, int session) {
    const int per_source =
        config.strategy == StrategyKind::Nps2Rotating ? config.n - 1 : config.n;
    SplitMix64 gen(derive_seed(config.rng_seed, kDataTag, static_cast<std::uint64_t>(session)));

    std::vector<std::vector<DataUnit>> units;
    units.reserve(config.n);
    for (int source = 1; source <= config.n; ++source) {
        std::vector<DataUnit> row;
        row.reserve(per_source);
        for (int index = 1; index <= per_source; ++index) {
            row.push_back(draw_unit(gen, config.payload_width));
        }
        units.push_back(std::move(row));
    }
    return SessionSourceData(config.n, config.strategy, std::move(units));
}

SessionRun run_session(const SimulationConfig& config, int session,
                       const TransmissionSchedule& schedule, const SessionSourceData& data) {
    if (schedule.strategy() != config.strategy || schedule.path_count() != config.n) {
        throw std::logic_error("schedule does not match the configuration");
    }
    if (data.path_count() != config.n || data.strategy() != config.strategy) {
        throw std::logic_error("source data does not match the configuration");
    }

    const std::optional<PathId> failed = failure_for_session(config, session);

    SessionRun run;
    run.collector.schedule = &schedule;
    run.collector.failed_path = failed;

    for (int round = 1; round <= schedule.rounds(); ++round) {
        for (PathId path : schedule.path_ids()) {
            TraceEntry entry;
            entry.session = session;
            entry.round = round;
            entry.path = path;

            if (failed && *failed == path) {
                entry.dropped = true;
                run.trace.push_back(std::move(entry));
                continue;
            }

            const SlotAssignment& slot = schedule.slot(path, round);
            Packet packet;
            packet.sender = path;
            packet.round = round;
            packet.session = session;
            switch (slot.kind) {
                case SlotAssignment::Kind::OwnData:
                    packet.kind = PayloadKind::Data;
                    packet.unit = data.unit(path, slot.data_index);
                    entry.data_index = slot.data_index;
                    break;
                case SlotAssignment::Kind::Parity:
                    packet.kind = PayloadKind::Parity;
                    packet.unit = compute_parity(data, schedule, round);
                    break;
                case SlotAssignment::Kind::Idle:
                    throw std::logic_error("idle slot in an active schedule");
            }
            run.collector.insert(packet);
            entry.packet = std::move(packet);
            run.trace.push_back(std::move(entry));
        }
    }
    return run;
}

SimulationResult run_simulation(const SimulationConfig& raw_config) {
    const SimulationConfig config = resolved_config(raw_config);
    const TransmissionSchedule schedule =
        build_schedule(config.strategy, config.n, config.dedicated_path);

    SimulationResult result;
    const int sessions = total_sessions(config);
    for (int session = 1; session <= sessions; ++session) {
        const SessionSourceData data = generate_source_data(config, session);
        SessionRun run = run_session(config, session, schedule, data);
        const DeliveryRecord record = decode_session(run.collector, data);
        if (!record.all_bit_exact()) {
            throw std::logic_error("decoded unit differs from the source data");
        }
        result.reports.push_back(score_session(record, schedule, session));
        for (TraceEntry& entry : run.trace) {
            result.trace.push_back(std::move(entry));
        }
    }
    return result;
}

}  // namespace npsim
