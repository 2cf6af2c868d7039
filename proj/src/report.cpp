#include <npsim/report.hpp>

#include <ostream>

#include <npsim/version.hpp>

namespace npsim {

namespace {

constexpr int kTraceFormatVersion = 1;

std::string_view failure_mode_name(FailureModel::Mode mode) {
    switch (mode) {
        case FailureModel::Mode::None: return "none";
        case FailureModel::Mode::Fixed: return "path";
        case FailureModel::Mode::RandomPerSession: return "random";
        case FailureModel::Mode::Exhaustive: return "exhaustive";
    }
    throw std::logic_error("unknown failure mode");
}

Json rational_to_json(const Rational& r) {
    return Json{{"num", r.num()}, {"den", r.den()}};
}

Rational rational_from_json(const Json& j) {
    return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
}

Json optional_path_to_json(const std::optional<PathId>& path) {
    return path ? Json(*path) : Json(nullptr);
}

std::optional<PathId> optional_path_from_json(const Json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<PathId>();
}

std::string hex64(std::uint64_t value) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string hex(16, '0');
    for (int i = 15; i >= 0; --i) {
        hex[i] = digits[value & 0x0f];
        value >>= 4;
    }
    return hex;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

Json config_to_json(const SimulationConfig& config) {
    Json failure;
    failure["mode"] = std::string(failure_mode_name(config.failure.mode));
    if (config.failure.mode == FailureModel::Mode::Fixed) {
        failure["path"] = *config.failure.fixed.failed_path;
        if (!config.failure.fixed.sessions_affected.empty()) {
            failure["sessions_affected"] = config.failure.fixed.sessions_affected;
        }
    }

    Json j;
    j["strategy"] = std::string(to_string(config.strategy));
    j["paths"] = config.n;
    j["dedicated_path"] = optional_path_to_json(config.dedicated_path);
    j["sessions"] = config.sessions;
    j["failure"] = failure;
    j["payload_bytes"] = config.payload_width;
    j["seed"] = config.rng_seed;
    return j;
}

SimulationConfig config_from_json(const Json& j) {
    SimulationConfig config;
    const auto strategy = strategy_from_string(j.at("strategy").get<std::string>());
    if (!strategy) {
        throw InvalidInputError("unknown strategy in config: " +
                                j.at("strategy").get<std::string>());
    }
    config.strategy = *strategy;
    config.n = j.at("paths").get<int>();
    config.dedicated_path = optional_path_from_json(j.at("dedicated_path"));
    config.sessions = j.at("sessions").get<int>();

    const Json& failure = j.at("failure");
    const std::string mode = failure.at("mode").get<std::string>();
    if (mode == "none") {
        config.failure.mode = FailureModel::Mode::None;
    } else if (mode == "path") {
        config.failure.mode = FailureModel::Mode::Fixed;
        config.failure.fixed.failed_path = failure.at("path").get<PathId>();
        if (failure.contains("sessions_affected")) {
            config.failure.fixed.sessions_affected =
                failure.at("sessions_affected").get<std::set<int>>();
        }
    } else if (mode == "random") {
        config.failure.mode = FailureModel::Mode::RandomPerSession;
    } else if (mode == "exhaustive") {
        config.failure.mode = FailureModel::Mode::Exhaustive;
    } else {
        throw InvalidInputError("unknown failure mode in config: " + mode);
    }

    config.payload_width = j.at("payload_bytes").get<std::size_t>();
    config.rng_seed = j.at("seed").get<std::uint64_t>();
    return config;
}

std::string config_hash(const SimulationConfig& config) {
    return hex64(fnv1a64(config_to_json(config).dump()));
}

RunManifest make_manifest(const SimulationConfig& config) {
    return {kToolName, kToolVersion, config, config_hash(config)};
}

Json manifest_to_json(const RunManifest& manifest) {
    Json j;
    j["tool"] = manifest.tool;
    j["version"] = manifest.version;
    j["config"] = config_to_json(manifest.config);
    j["config_hash"] = manifest.config_hash;
    return j;
}

RunManifest manifest_from_json(const Json& j) {
    RunManifest manifest;
    manifest.tool = j.at("tool").get<std::string>();
    manifest.version = j.at("version").get<std::string>();
    manifest.config = config_from_json(j.at("config"));
    manifest.config_hash = j.at("config_hash").get<std::string>();
    return manifest;
}

Json session_report_to_json(const SessionReport& report) {
    Json receivers = Json::object();
    for (const auto& [receiver, stats] : report.per_receiver) {
        Json s;
        s["scheduled"] = stats.scheduled;
        s["direct"] = stats.direct;
        s["recovered"] = stats.recovered;
        s["lost"] = stats.lost;
        s["max_recovery_delay_rounds"] = stats.max_recovery_delay_rounds
                                             ? Json(*stats.max_recovery_delay_rounds)
                                             : Json(nullptr);
        receivers[std::to_string(receiver)] = std::move(s);
    }

    Json j;
    j["session"] = report.session;
    j["strategy"] = std::string(to_string(report.strategy));
    j["paths"] = report.n;
    j["failed_path"] = optional_path_to_json(report.failed_path);
    j["normalized_capacity"] = rational_to_json(report.normalized_capacity);
    j["recovery_success"] = report.recovery_success;
    j["per_receiver"] = std::move(receivers);
    return j;
}

SessionReport session_report_from_json(const Json& j) {
    SessionReport report;
    report.session = j.at("session").get<int>();
    const auto strategy = strategy_from_string(j.at("strategy").get<std::string>());
    if (!strategy) {
        throw InvalidInputError("unknown strategy in report: " +
                                j.at("strategy").get<std::string>());
    }
    report.strategy = *strategy;
    report.n = j.at("paths").get<int>();
    report.failed_path = optional_path_from_json(j.at("failed_path"));
    report.normalized_capacity = rational_from_json(j.at("normalized_capacity"));
    report.recovery_success = j.at("recovery_success").get<bool>();

    for (const auto& [key, value] : j.at("per_receiver").items()) {
        ReceiverStats stats;
        stats.scheduled = value.at("scheduled").get<int>();
        stats.direct = value.at("direct").get<int>();
        stats.recovered = value.at("recovered").get<int>();
        stats.lost = value.at("lost").get<int>();
        const Json& delay = value.at("max_recovery_delay_rounds");
        stats.max_recovery_delay_rounds =
            delay.is_null() ? std::nullopt : std::optional<int>(delay.get<int>());
        report.per_receiver.emplace(std::stoi(key), stats);
    }
    return report;
}

Json report_document(const RunManifest& manifest, const std::vector<SessionReport>& reports) {
    if (reports.empty()) {
        throw InvalidInputError("report document needs at least one session");
    }

    Json sessions = Json::array();
    bool all_recovered = true;
    const Rational capacity = reports.front().normalized_capacity;
    for (const SessionReport& report : reports) {
        if (!(report.normalized_capacity == capacity)) {
            throw InvalidInputError("sessions disagree on normalized capacity");
        }
        all_recovered = all_recovered && report.recovery_success;
        sessions.push_back(session_report_to_json(report));
    }

    Json j;
    j["manifest"] = manifest_to_json(manifest);
    j["sessions"] = std::move(sessions);
    j["aggregate"] = Json{{"capacity", rational_to_json(capacity)},
                          {"all_recovered", all_recovered}};
    return j;
}

std::vector<SessionReport> reports_from_document(const Json& document) {
    std::vector<SessionReport> reports;
    for (const Json& session : document.at("sessions")) {
        reports.push_back(session_report_from_json(session));
    }
    return reports;
}

std::string trace_header_line(const RunManifest& manifest) {
    Json j;
    j["format"] = "npsim-trace";
    j["version"] = kTraceFormatVersion;
    j["tool"] = manifest.tool;
    j["tool_version"] = manifest.version;
    j["config_hash"] = manifest.config_hash;
    return j.dump();
}

std::string trace_entry_line(const TraceEntry& entry) {
    Json j;
    j["session"] = entry.session;
    j["round"] = entry.round;
    j["path"] = entry.path;
    if (entry.dropped) {
        j["kind"] = "dropped";
        return j.dump();
    }
    j["kind"] = entry.packet.kind == PayloadKind::Parity ? "parity" : "data";
    j["sender"] = entry.packet.sender;
    if (entry.packet.kind == PayloadKind::Data) {
        if (!entry.data_index) {
            throw std::logic_error("data trace entry without a data index");
        }
        j["data_index"] = *entry.data_index;
    }
    j["payload"] = entry.packet.unit.to_hex();
    return j.dump();
}

void write_trace(std::ostream& out, const RunManifest& manifest, const TransmissionTrace& trace) {
    out << trace_header_line(manifest) << '\n';
    for (const TraceEntry& entry : trace) {
        out << trace_entry_line(entry) << '\n';
    }
}

}  // namespace npsim
