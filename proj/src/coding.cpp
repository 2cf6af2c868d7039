#include <npsim/coding.hpp>

#include <algorithm>
#include <string>

namespace npsim {

namespace {

void require_matching_dimensions(const SessionSourceData& data,
                                 const TransmissionSchedule& schedule) {
    if (data.strategy() != schedule.strategy() || data.path_count() != schedule.path_count() ||
        data.units_per_source() != schedule.units_per_source()) {
        throw InvalidInputError("source data dimensions do not match the schedule");
    }
}

/// Checks the collector against the single-failure model. Returns normally
/// only when exactly the declared failed path (if any) is absent and every
/// surviving path is complete.
void audit_collector(const CollectorState& state) {
    const TransmissionSchedule& schedule = *state.schedule;
    const int rounds = schedule.rounds();

    std::vector<PathId> absent;
    for (PathId p : schedule.path_ids()) {
        int present = 0;
        for (int r = 1; r <= rounds; ++r) {
            if (state.find(p, r) != nullptr) ++present;
        }
        if (present == 0) {
            absent.push_back(p);
        } else if (present < rounds) {
            const bool declared_failed = state.failed_path && *state.failed_path == p;
            if (declared_failed) {
                throw CorruptedTraceError("packets recorded on the failed path " +
                                          std::to_string(p));
            }
            throw CorruptedTraceError("surviving path " + std::to_string(p) +
                                      " is missing packets");
        } else if (state.failed_path && *state.failed_path == p) {
            throw CorruptedTraceError("packets recorded on the failed path " + std::to_string(p));
        }
    }

    if (absent.size() >= 2) {
        throw UnsupportedFailureError("more than one path is silent; the model protects "
                                      "against a single failure");
    }
    if (absent.size() == 1) {
        const bool matches_declared = state.failed_path && *state.failed_path == absent[0];
        if (!matches_declared) {
            throw CorruptedTraceError("surviving path " + std::to_string(absent[0]) +
                                      " is missing packets");
        }
    }
}

const Packet& packet_at(const CollectorState& state, PathId path, int round,
                        PayloadKind expected_kind) {
    const Packet* packet = state.find(path, round);
    if (packet == nullptr) {
        throw CorruptedTraceError("no packet for path " + std::to_string(path) + " round " +
                                  std::to_string(round));
    }
    if (packet->kind != expected_kind) {
        throw CorruptedTraceError("packet for path " + std::to_string(path) + " round " +
                                  std::to_string(round) + " has the wrong payload kind");
    }
    return *packet;
}

}  // namespace

SessionSourceData::SessionSourceData(int n, StrategyKind strategy,
                                     std::vector<std::vector<DataUnit>> units)
    : n_(n), strategy_(strategy), units_(std::move(units)) {
    if (n_ < 2) {
        throw InvalidInputError("source data needs at least two sources");
    }
    if (units_.size() != static_cast<std::size_t>(n_)) {
        throw InvalidInputError("source data must have one row per working source");
    }
    const std::size_t per_source = units_.front().size();
    if (per_source == 0) {
        throw InvalidInputError("source rows must be nonempty");
    }
    const std::size_t width = units_.front().front().width();
    for (const auto& row : units_) {
        if (row.size() != per_source) {
            throw InvalidInputError("source rows must all have the same length");
        }
        for (const DataUnit& u : row) {
            if (u.width() != width) {
                throw InvalidInputError("source units must all have the same width");
            }
        }
    }
}

int SessionSourceData::units_per_source() const {
    return static_cast<int>(units_.front().size());
}

std::size_t SessionSourceData::payload_width() const {
    return units_.front().front().width();
}

const DataUnit& SessionSourceData::unit(PathId source, int data_index) const {
    if (source < 1 || source > n_) {
        throw InvalidInputError("source " + std::to_string(source) + " outside 1.." +
                                std::to_string(n_));
    }
    if (data_index < 1 || data_index > units_per_source()) {
        throw InvalidInputError("data index " + std::to_string(data_index) + " outside 1.." +
                                std::to_string(units_per_source()));
    }
    return units_[source - 1][data_index - 1];
}

DataUnit compute_parity(const SessionSourceData& data, const TransmissionSchedule& schedule,
                        int round) {
    require_matching_dimensions(data, schedule);
    const ParityCombination comb = parity_combination(schedule, round);
    std::vector<DataUnit> terms;
    terms.reserve(comb.terms.size());
    for (const ParityTerm& term : comb.terms) {
        terms.push_back(data.unit(term.source, term.data_index));
    }
    return xor_all(terms);
}

std::map<UnitId, RecoveredUnit> recover_failed_units(const CollectorState& state) {
    if (state.schedule == nullptr) {
        throw InvalidInputError("collector has no schedule");
    }
    audit_collector(state);

    std::map<UnitId, RecoveredUnit> recovered;
    if (!state.failed_path) {
        return recovered;
    }

    const TransmissionSchedule& schedule = *state.schedule;
    const PathId failed = *state.failed_path;

    for (int r = 1; r <= schedule.rounds(); ++r) {
        const SlotAssignment& lost = schedule.slot(failed, r);
        if (lost.kind != SlotAssignment::Kind::OwnData) continue;  // lost parity stays lost

        const int cover = covering_parity_round(schedule, failed, lost.data_index);
        const ParityCombination comb = parity_combination(schedule, cover);

        DataUnit acc = packet_at(state, comb.parity_path, cover, PayloadKind::Parity).unit;
        int recovery_round = cover;
        for (const ParityTerm& term : comb.terms) {
            if (term.source == failed) {
                if (term.data_index != lost.data_index) {
                    throw std::logic_error("parity combination holds a second unit of the "
                                           "failed path");
                }
                continue;
            }
            const int sent = schedule.transmission_round(term.source, term.data_index);
            acc.xor_with(packet_at(state, term.source, sent, PayloadKind::Data).unit);
            recovery_round = std::max(recovery_round, sent);
        }
        recovered.insert({{failed, lost.data_index}, {std::move(acc), recovery_round}});
    }
    return recovered;
}

int ReceiverDelivery::direct_count() const {
    return static_cast<int>(
        std::count_if(units.begin(), units.end(),
                      [](const UnitDelivery& u) { return u.how == DeliveryKind::Direct; }));
}

int ReceiverDelivery::recovered_count() const {
    return static_cast<int>(
        std::count_if(units.begin(), units.end(),
                      [](const UnitDelivery& u) { return u.how == DeliveryKind::Recovered; }));
}

std::optional<int> ReceiverDelivery::max_recovery_delay() const {
    std::optional<int> delay;
    for (const UnitDelivery& u : units) {
        if (u.how != DeliveryKind::Recovered) continue;
        delay = std::max(delay.value_or(0), u.recovery_delay_rounds);
    }
    return delay;
}

bool DeliveryRecord::all_bit_exact() const {
    for (const auto& [receiver, delivery] : per_receiver) {
        for (const UnitDelivery& u : delivery.units) {
            if (!u.matches_expected) return false;
        }
    }
    return true;
}

DeliveryRecord decode_session(const CollectorState& state, const SessionSourceData& expected) {
    if (state.schedule == nullptr) {
        throw InvalidInputError("collector has no schedule");
    }
    const TransmissionSchedule& schedule = *state.schedule;
    require_matching_dimensions(expected, schedule);

    // recover_failed_units also audits the collector against the model.
    const std::map<UnitId, RecoveredUnit> recovered = recover_failed_units(state);

    DeliveryRecord record;
    record.strategy = schedule.strategy();
    record.n = schedule.path_count();
    record.failed_path = state.failed_path;

    for (PathId p : schedule.path_ids()) {
        ReceiverDelivery delivery;
        delivery.receiver = p;
        delivery.scheduled_units = schedule.own_units_per_source(p);

        const bool failed = state.failed_path && *state.failed_path == p;
        for (int r = 1; r <= schedule.rounds(); ++r) {
            const SlotAssignment& slot = schedule.slot(p, r);
            if (slot.kind != SlotAssignment::Kind::OwnData) continue;

            const UnitId id{p, slot.data_index};
            if (failed) {
                auto it = recovered.find(id);
                if (it == recovered.end()) continue;  // lost for good
                const RecoveredUnit& ru = it->second;
                delivery.units.push_back({id, r, DeliveryKind::Recovered,
                                          ru.recovery_round - r, ru.unit,
                                          ru.unit == expected.unit(p, slot.data_index)});
            } else {
                const Packet& packet = packet_at(state, p, r, PayloadKind::Data);
                delivery.units.push_back({id, r, DeliveryKind::Direct, 0, packet.unit,
                                          packet.unit == expected.unit(p, slot.data_index)});
            }
        }
        record.per_receiver.emplace(p, std::move(delivery));
    }
    return record;
}

}  // namespace npsim
