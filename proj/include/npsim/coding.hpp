#pragma once

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include <npsim/core.hpp>
#include <npsim/schedule.hpp>

namespace npsim {

/// One session of payloads: unit (source, data_index) is the data_index-th
/// own unit of that source, both axes 1-based. Rows exist for every working
/// source even when its schedule row never transmits them (dedicated source).
class SessionSourceData {
  public:
    SessionSourceData(int n, StrategyKind strategy, std::vector<std::vector<DataUnit>> units);

    int path_count() const { return n_; }
    StrategyKind strategy() const { return strategy_; }
    int units_per_source() const;
    std::size_t payload_width() const;
    const DataUnit& unit(PathId source, int data_index) const;

  private:
    int n_;
    StrategyKind strategy_;
    std::vector<std::vector<DataUnit>> units_;
};

struct SlotKey {
    PathId path = 0;
    int round = 0;
    auto operator<=>(const SlotKey&) const = default;
};

/// Receiver-side view of one session: every packet that arrived, keyed by
/// (sender, round). A failed path contributes no entries at all.
struct CollectorState {
    const TransmissionSchedule* schedule = nullptr;
    std::optional<PathId> failed_path;
    std::map<SlotKey, Packet> received;

    void insert(const Packet& packet) { received.insert({{packet.sender, packet.round}, packet}); }

    const Packet* find(PathId path, int round) const {
        auto it = received.find({path, round});
        return it == received.end() ? nullptr : &it->second;
    }
};

/// XOR of the source units the schedule combines into this round's parity.
DataUnit compute_parity(const SessionSourceData& data, const TransmissionSchedule& schedule,
                        int round);

struct UnitId {
    PathId source = 0;
    int data_index = 0;
    auto operator<=>(const UnitId&) const = default;
};

struct RecoveredUnit {
    DataUnit unit;
    int recovery_round = 0;  // last round whose packets the reconstruction needs
};

/// Reconstructs the failed path's own-data units from parity. Lost parity
/// units are not reconstructed. Empty when no path failed.
std::map<UnitId, RecoveredUnit> recover_failed_units(const CollectorState& state);

enum class DeliveryKind { Direct, Recovered };

struct UnitDelivery {
    UnitId id;
    int transmission_round = 0;
    DeliveryKind how = DeliveryKind::Direct;
    int recovery_delay_rounds = 0;  // recovery round minus transmission round
    DataUnit unit;
    bool matches_expected = false;
};

struct ReceiverDelivery {
    PathId receiver = 0;
    int scheduled_units = 0;
    std::vector<UnitDelivery> units;  // obtained units in transmission order

    int direct_count() const;
    int recovered_count() const;
    int lost_count() const { return scheduled_units - static_cast<int>(units.size()); }
    std::optional<int> max_recovery_delay() const;
};

struct DeliveryRecord {
    StrategyKind strategy = StrategyKind::Nps2Rotating;
    int n = 0;
    std::optional<PathId> failed_path;
    std::map<PathId, ReceiverDelivery> per_receiver;

    bool all_bit_exact() const;
};

/// Per-receiver delivery outcome for one collected session. The expected
/// data is used only to flag bit-exactness, never to fill gaps.
DeliveryRecord decode_session(const CollectorState& state, const SessionSourceData& expected);

}  // namespace npsim
