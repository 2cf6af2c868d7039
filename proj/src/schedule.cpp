#include <npsim/schedule.hpp>

#include <algorithm>
#include <string>

namespace npsim {

namespace {

std::string path_label(PathId path) {
    return path == kExtraPath ? std::string("extra path") : "path " + std::to_string(path);
}

}  // namespace

TransmissionSchedule::TransmissionSchedule(StrategyKind strategy, int n, bool extra_path,
                                           std::optional<PathId> dedicated_path,
                                           std::vector<std::vector<SlotAssignment>> grid)
    : strategy_(strategy), n_(n), extra_(extra_path), dedicated_(dedicated_path),
      grid_(std::move(grid)) {
    const std::size_t rows = extra_ ? static_cast<std::size_t>(n_) + 1 : n_;
    if (grid_.size() != rows) {
        throw std::logic_error("schedule grid has wrong row count");
    }
    for (const auto& row : grid_) {
        if (row.size() != static_cast<std::size_t>(n_)) {
            throw std::logic_error("schedule grid has wrong column count");
        }
    }
}

std::vector<PathId> TransmissionSchedule::path_ids() const {
    std::vector<PathId> ids;
    ids.reserve(total_paths());
    if (extra_) ids.push_back(kExtraPath);
    for (PathId p = 1; p <= n_; ++p) ids.push_back(p);
    return ids;
}

int TransmissionSchedule::row_index(PathId path) const {
    if (extra_) {
        if (path < 0 || path > n_) {
            throw InvalidInputError(path_label(path) + " is not part of this schedule");
        }
        return path;  // extra path occupies row 0
    }
    if (path < 1 || path > n_) {
        throw InvalidInputError(path_label(path) + " is not part of this schedule");
    }
    return path - 1;
}

const SlotAssignment& TransmissionSchedule::slot(PathId path, int round) const {
    if (round < 1 || round > n_) {
        throw InvalidInputError("round " + std::to_string(round) + " outside 1.." +
                                std::to_string(n_));
    }
    return grid_[row_index(path)][round - 1];
}

PathId TransmissionSchedule::parity_path(int round) const {
    for (PathId p : path_ids()) {
        if (slot(p, round).kind == SlotAssignment::Kind::Parity) return p;
    }
    throw std::logic_error("round without a parity slot");
}

int TransmissionSchedule::own_units_per_source(PathId path) const {
    int count = 0;
    for (int r = 1; r <= n_; ++r) {
        if (slot(path, r).kind == SlotAssignment::Kind::OwnData) ++count;
    }
    return count;
}

int TransmissionSchedule::units_per_source() const {
    return strategy_ == StrategyKind::Nps2Rotating ? n_ - 1 : n_;
}

int TransmissionSchedule::transmission_round(PathId source, int data_index) const {
    for (int r = 1; r <= n_; ++r) {
        const SlotAssignment& s = slot(source, r);
        if (s.kind == SlotAssignment::Kind::OwnData && s.data_index == data_index) return r;
    }
    throw std::logic_error("unit (" + std::to_string(source) + ", " +
                           std::to_string(data_index) + ") is never transmitted");
}

TransmissionSchedule build_schedule(StrategyKind strategy, int n,
                                    std::optional<PathId> dedicated_path) {
    if (n < 2) {
        throw ConfigError("at least two disjoint paths are required, got " + std::to_string(n));
    }
    if (dedicated_path && strategy != StrategyKind::Nps1Dedicated) {
        throw ConfigError("dedicated path applies only to the nps1-dedicated strategy");
    }

    using Kind = SlotAssignment::Kind;
    std::vector<std::vector<SlotAssignment>> grid;

    switch (strategy) {
        case StrategyKind::Nps1Extra: {
            // Row 0 is the extra path, all parity; source i sends unit r in round r.
            grid.emplace_back(n, SlotAssignment::parity());
            for (int i = 1; i <= n; ++i) {
                std::vector<SlotAssignment> row;
                for (int r = 1; r <= n; ++r) row.push_back(SlotAssignment::own_data(r));
                grid.push_back(std::move(row));
            }
            return TransmissionSchedule(strategy, n, true, std::nullopt, std::move(grid));
        }
        case StrategyKind::Nps1Dedicated: {
            if (!dedicated_path) {
                throw ConfigError("nps1-dedicated requires a dedicated path");
            }
            const PathId j = *dedicated_path;
            if (j < 1 || j > n) {
                throw ConfigError("dedicated path " + std::to_string(j) + " outside 1.." +
                                  std::to_string(n));
            }
            for (int i = 1; i <= n; ++i) {
                std::vector<SlotAssignment> row;
                for (int r = 1; r <= n; ++r) {
                    row.push_back(i == j ? SlotAssignment::parity() : SlotAssignment::own_data(r));
                }
                grid.push_back(std::move(row));
            }
            return TransmissionSchedule(strategy, n, false, j, std::move(grid));
        }
        case StrategyKind::Nps2Rotating: {
            // Source i carries parity in round n-i+1 and its n-1 own units in
            // the remaining rounds, in order.
            for (int i = 1; i <= n; ++i) {
                const int parity_round = n - i + 1;
                std::vector<SlotAssignment> row;
                for (int r = 1; r <= n; ++r) {
                    if (r == parity_round) {
                        row.push_back(SlotAssignment::parity());
                    } else {
                        row.push_back(SlotAssignment::own_data(r < parity_round ? r : r - 1));
                    }
                }
                grid.push_back(std::move(row));
            }
            return TransmissionSchedule(strategy, n, false, std::nullopt, std::move(grid));
        }
    }
    throw std::logic_error("unknown StrategyKind");
}

ParityCombination parity_combination(const TransmissionSchedule& schedule, int round) {
    const int n = schedule.path_count();
    if (round < 1 || round > n) {
        throw InvalidInputError("round " + std::to_string(round) + " outside 1.." +
                                std::to_string(n));
    }

    ParityCombination comb;
    comb.round = round;
    comb.parity_path = schedule.parity_path(round);

    switch (schedule.strategy()) {
        case StrategyKind::Nps1Extra:
            for (PathId i = 1; i <= n; ++i) comb.terms.push_back({i, round});
            break;
        case StrategyKind::Nps1Dedicated:
            for (PathId i = 1; i <= n; ++i) {
                if (i != comb.parity_path) comb.terms.push_back({i, round});
            }
            break;
        case StrategyKind::Nps2Rotating:
            // Parity of round l covers unit l of sources 1..n-l (sent this
            // round) and unit l-1 of sources n-l+2..n (sent last round).
            for (PathId i = 1; i <= n - round; ++i) comb.terms.push_back({i, round});
            for (PathId i = n - round + 2; i <= n; ++i) comb.terms.push_back({i, round - 1});
            break;
    }
    std::sort(comb.terms.begin(), comb.terms.end());
    return comb;
}

int covering_parity_round(const TransmissionSchedule& schedule, PathId source, int data_index) {
    for (int r = 1; r <= schedule.rounds(); ++r) {
        const ParityCombination comb = parity_combination(schedule, r);
        for (const ParityTerm& term : comb.terms) {
            if (term.source == source && term.data_index == data_index) return r;
        }
    }
    throw std::logic_error("no parity combination covers unit (" + std::to_string(source) + ", " +
                           std::to_string(data_index) + ")");
}

}  // namespace npsim
