#pragma once

#include <map>
#include <optional>
#include <vector>

#include <npsim/coding.hpp>
#include <npsim/core.hpp>
#include <npsim/schedule.hpp>

namespace npsim {

struct ReceiverStats {
    int scheduled = 0;
    int direct = 0;
    int recovered = 0;
    int lost = 0;
    std::optional<int> max_recovery_delay_rounds;

    friend bool operator==(const ReceiverStats&, const ReceiverStats&) = default;
};

struct SessionReport {
    int session = 0;
    StrategyKind strategy = StrategyKind::Nps2Rotating;
    int n = 0;
    std::optional<PathId> failed_path;
    std::map<PathId, ReceiverStats> per_receiver;
    Rational normalized_capacity;
    bool recovery_success = false;

    friend bool operator==(const SessionReport&, const SessionReport&) = default;
};

/// Own-data slots over total slots, exact and in lowest terms. A property of
/// the schedule alone: n/(n+1) for NPS-I-extra, (n-1)/n otherwise.
Rational normalized_capacity(const TransmissionSchedule& schedule);

SessionReport score_session(const DeliveryRecord& record, const TransmissionSchedule& schedule,
                            int session);

/// Delivered own units per source and session. All reports must come from
/// the same strategy and path count and agree on the per-source counts.
std::map<PathId, int> fairness_summary(const std::vector<SessionReport>& reports);

}  // namespace npsim
