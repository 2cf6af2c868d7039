#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include <npsim/metrics.hpp>
#include <npsim/transport.hpp>

namespace npsim {

using Json = nlohmann::ordered_json;

/// Identifies what produced a report or trace. config is the resolved form.
struct RunManifest {
    std::string tool;
    std::string version;
    SimulationConfig config;
    std::string config_hash;  // fnv1a-64 of the canonical config JSON, 16 hex chars
};

std::uint64_t fnv1a64(std::string_view text);

Json config_to_json(const SimulationConfig& config);
SimulationConfig config_from_json(const Json& j);
std::string config_hash(const SimulationConfig& config);

RunManifest make_manifest(const SimulationConfig& config);
Json manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const Json& j);

Json session_report_to_json(const SessionReport& report);
SessionReport session_report_from_json(const Json& j);

/// Full report document: manifest, per-session reports, aggregate capacity
/// and recovery flags. Serialization is canonical; equal inputs give equal bytes.
Json report_document(const RunManifest& manifest, const std::vector<SessionReport>& reports);
std::vector<SessionReport> reports_from_document(const Json& document);

/// Line-delimited trace: a header object naming format version and config
/// hash, then one object per slot in emission order.
std::string trace_header_line(const RunManifest& manifest);
std::string trace_entry_line(const TraceEntry& entry);
void write_trace(std::ostream& out, const RunManifest& manifest, const TransmissionTrace& trace);

}  // namespace npsim
