#include <npsim/metrics.hpp>

#include <string>

namespace npsim {

Rational normalized_capacity(const TransmissionSchedule& schedule) {
    int own = 0;
    int total = 0;
    for (PathId p : schedule.path_ids()) {
        for (int r = 1; r <= schedule.rounds(); ++r) {
            ++total;
            if (schedule.slot(p, r).kind == SlotAssignment::Kind::OwnData) ++own;
        }
    }
    return Rational(own, total);
}

SessionReport score_session(const DeliveryRecord& record, const TransmissionSchedule& schedule,
                            int session) {
    if (record.strategy != schedule.strategy() || record.n != schedule.path_count()) {
        throw InvalidInputError("delivery record does not match the schedule");
    }

    SessionReport report;
    report.session = session;
    report.strategy = record.strategy;
    report.n = record.n;
    report.failed_path = record.failed_path;
    report.normalized_capacity = normalized_capacity(schedule);
    report.recovery_success = true;

    for (const auto& [receiver, delivery] : record.per_receiver) {
        ReceiverStats stats;
        stats.scheduled = delivery.scheduled_units;
        stats.direct = delivery.direct_count();
        stats.recovered = delivery.recovered_count();
        stats.lost = delivery.lost_count();
        stats.max_recovery_delay_rounds = delivery.max_recovery_delay();
        if (stats.lost != 0) report.recovery_success = false;
        report.per_receiver.emplace(receiver, stats);
    }
    return report;
}

std::map<PathId, int> fairness_summary(const std::vector<SessionReport>& reports) {
    if (reports.empty()) {
        throw InvalidInputError("fairness summary needs at least one report");
    }
    const StrategyKind strategy = reports.front().strategy;
    const int n = reports.front().n;

    std::map<PathId, int> per_source;
    for (const SessionReport& report : reports) {
        if (report.strategy != strategy || report.n != n) {
            throw InvalidInputError("fairness summary over mixed strategies or path counts");
        }
        for (const auto& [receiver, stats] : report.per_receiver) {
            if (receiver == kExtraPath) continue;  // not one of the n sources
            const int delivered = stats.direct + stats.recovered;
            auto [it, inserted] = per_source.insert({receiver, delivered});
            if (!inserted && it->second != delivered) {
                throw InvalidInputError("reports disagree on units delivered for source " +
                                        std::to_string(receiver));
            }
        }
    }
    return per_source;
}

}  // namespace npsim
