#pragma once

#include <compare>
#include <optional>
#include <vector>

#include <npsim/core.hpp>

namespace npsim {

/// Per-session transmission plan: the slot kind for every (path, round).
/// A session has exactly n rounds. Immutable once built.
class TransmissionSchedule {
  public:
    TransmissionSchedule(StrategyKind strategy, int n, bool extra_path,
                         std::optional<PathId> dedicated_path,
                         std::vector<std::vector<SlotAssignment>> grid);

    StrategyKind strategy() const { return strategy_; }
    int path_count() const { return n_; }  // working paths only
    int rounds() const { return n_; }
    bool extra_path_present() const { return extra_; }
    std::optional<PathId> dedicated_path() const { return dedicated_; }

    /// All transmitting path ids, extra path (0) first when present.
    std::vector<PathId> path_ids() const;
    int total_paths() const { return extra_ ? n_ + 1 : n_; }

    const SlotAssignment& slot(PathId path, int round) const;

    /// The path carrying parity in the given round.
    PathId parity_path(int round) const;

    /// OwnData slots scheduled for this path across the session.
    int own_units_per_source(PathId path) const;

    /// Source data units per working source (n for NPS-I, n-1 for NPS-II).
    int units_per_source() const;

    /// Round in which (source, data_index) is transmitted.
    int transmission_round(PathId source, int data_index) const;

  private:
    int row_index(PathId path) const;

    StrategyKind strategy_;
    int n_;
    bool extra_;
    std::optional<PathId> dedicated_;
    std::vector<std::vector<SlotAssignment>> grid_;  // row per path, column per round
};

/// Builds the schedule for a strategy. dedicated_path is required for
/// Nps1Dedicated (must be in 1..n) and rejected for the other strategies.
TransmissionSchedule build_schedule(StrategyKind strategy, int n,
                                    std::optional<PathId> dedicated_path = std::nullopt);

struct ParityTerm {
    PathId source = 0;
    int data_index = 0;
    auto operator<=>(const ParityTerm&) const = default;
};

struct ParityCombination {
    int round = 0;
    PathId parity_path = 0;
    std::vector<ParityTerm> terms;  // sorted by (source, data_index)
};

/// The source units XORed into the parity unit of the given round.
ParityCombination parity_combination(const TransmissionSchedule& schedule, int round);

/// The unique round whose parity combination contains (source, data_index).
int covering_parity_round(const TransmissionSchedule& schedule, PathId source, int data_index);

}  // namespace npsim
