#include "doctest.h"

#include <map>
#include <set>
#include <vector>

#include <npsim/core.hpp>
#include <npsim/transport.hpp>

using namespace npsim;

namespace {

SimulationConfig base_config(StrategyKind strategy, int n) {
    SimulationConfig config;
    config.strategy = strategy;
    config.n = n;
    config.rng_seed = 404;
    return config;
}

bool same_entry(const TraceEntry& a, const TraceEntry& b) {
    if (a.session != b.session || a.round != b.round || a.path != b.path ||
        a.dropped != b.dropped || a.data_index != b.data_index) {
        return false;
    }
    if (a.dropped) return true;
    return a.packet.sender == b.packet.sender && a.packet.kind == b.packet.kind &&
           a.packet.round == b.packet.round && a.packet.session == b.packet.session &&
           a.packet.unit == b.packet.unit;
}

}  // namespace

TEST_SUITE("transport") {

TEST_CASE("source data is a pure function of seed and session") {
    auto config = base_config(StrategyKind::Nps2Rotating, 4);
    const auto first = generate_source_data(config, 3);
    const auto again = generate_source_data(config, 3);
    for (PathId s = 1; s <= 4; ++s) {
        for (int d = 1; d <= 3; ++d) {
            CHECK(first.unit(s, d) == again.unit(s, d));
        }
    }

    const auto other_session = generate_source_data(config, 4);
    CHECK_FALSE(first.unit(1, 1) == other_session.unit(1, 1));

    config.rng_seed = 405;
    const auto other_seed = generate_source_data(config, 3);
    CHECK_FALSE(first.unit(1, 1) == other_seed.unit(1, 1));
}

TEST_CASE("source data ignores the failure model") {
    auto plain = base_config(StrategyKind::Nps2Rotating, 3);
    auto failing = plain;
    failing.failure.mode = FailureModel::Mode::RandomPerSession;
    const auto a = generate_source_data(plain, 1);
    const auto b = generate_source_data(failing, 1);
    for (PathId s = 1; s <= 3; ++s) {
        for (int d = 1; d <= 2; ++d) {
            CHECK(a.unit(s, d) == b.unit(s, d));
        }
    }
}

TEST_CASE("source data dimensions follow the strategy") {
    auto config = base_config(StrategyKind::Nps2Rotating, 2);
    config.payload_width = 1;
    const auto rotating = generate_source_data(config, 1);
    CHECK(rotating.units_per_source() == 1);
    CHECK(rotating.payload_width() == 1);

    config.strategy = StrategyKind::Nps1Extra;
    CHECK(generate_source_data(config, 1).units_per_source() == 2);
}

TEST_CASE("a clean session emits every slot") {
    const auto config = base_config(StrategyKind::Nps1Extra, 3);
    const auto schedule = build_schedule(config.strategy, config.n);
    const auto data = generate_source_data(config, 1);
    const auto run = run_session(config, 1, schedule, data);

    CHECK(run.trace.size() == 12);  // 4 paths x 3 rounds
    for (const TraceEntry& entry : run.trace) {
        CHECK_FALSE(entry.dropped);
    }
    CHECK(run.collector.received.size() == 12);
}

TEST_CASE("a failed path drops its whole session") {
    auto config = base_config(StrategyKind::Nps2Rotating, 3);
    config.failure.mode = FailureModel::Mode::Fixed;
    config.failure.fixed.failed_path = 2;
    const auto schedule = build_schedule(config.strategy, config.n);
    const auto data = generate_source_data(config, 1);
    const auto run = run_session(config, 1, schedule, data);

    CHECK(run.trace.size() == 9);
    int dropped = 0;
    for (const TraceEntry& entry : run.trace) {
        if (entry.dropped) {
            ++dropped;
            CHECK(entry.path == 2);
        }
    }
    CHECK(dropped == 3);
    CHECK(run.collector.received.size() == 6);
    CHECK(run.collector.failed_path == 2);
}

TEST_CASE("trace entries come out round major, extra path first") {
    const auto config = base_config(StrategyKind::Nps1Extra, 2);
    const auto schedule = build_schedule(config.strategy, config.n);
    const auto data = generate_source_data(config, 1);
    const auto run = run_session(config, 1, schedule, data);

    std::vector<std::pair<int, PathId>> order;
    for (const TraceEntry& entry : run.trace) {
        order.push_back({entry.round, entry.path});
    }
    CHECK(order == std::vector<std::pair<int, PathId>>{
                       {1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}});
}

TEST_CASE("emitted packets match their slots") {
    const auto config = base_config(StrategyKind::Nps2Rotating, 4);
    const auto schedule = build_schedule(config.strategy, config.n);
    const auto data = generate_source_data(config, 1);
    const auto run = run_session(config, 1, schedule, data);

    std::set<std::pair<int, PathId>> seen;
    for (const TraceEntry& entry : run.trace) {
        CHECK(seen.insert({entry.round, entry.path}).second);
        const auto& slot = schedule.slot(entry.path, entry.round);
        if (slot.kind == SlotAssignment::Kind::Parity) {
            CHECK(entry.packet.kind == PayloadKind::Parity);
            CHECK_FALSE(entry.data_index.has_value());
        } else {
            CHECK(entry.packet.kind == PayloadKind::Data);
            CHECK(entry.data_index == slot.data_index);
            CHECK(entry.packet.unit == data.unit(entry.path, slot.data_index));
        }
        CHECK(entry.packet.sender == entry.path);
        CHECK(entry.packet.round == entry.round);
        CHECK(entry.packet.session == 1);
    }
    CHECK(seen.size() == 16);
}

TEST_CASE("failure positions enumerate none plus every path") {
    CHECK(failure_positions(base_config(StrategyKind::Nps2Rotating, 4)) ==
          std::vector<std::optional<PathId>>{std::nullopt, 1, 2, 3, 4});
    CHECK(failure_positions(base_config(StrategyKind::Nps1Extra, 4)) ==
          std::vector<std::optional<PathId>>{std::nullopt, 0, 1, 2, 3, 4});
}

TEST_CASE("exhaustive mode multiplies sessions by positions") {
    auto config = base_config(StrategyKind::Nps2Rotating, 2);
    config.sessions = 2;
    config.failure.mode = FailureModel::Mode::Exhaustive;
    CHECK(total_sessions(config) == 6);

    const auto result = run_simulation(config);
    REQUIRE(result.reports.size() == 6);
    const std::vector<std::optional<PathId>> expected{std::nullopt, 1, 2,
                                                      std::nullopt, 1, 2};
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(result.reports[i].failed_path == expected[i]);
        CHECK(result.reports[i].session == static_cast<int>(i) + 1);
        CHECK(result.reports[i].recovery_success);
    }
    CHECK(result.trace.size() == 6 * 2 * 2);
}

TEST_CASE("fixed failures honor the affected session set") {
    auto config = base_config(StrategyKind::Nps2Rotating, 3);
    config.sessions = 3;
    config.failure.mode = FailureModel::Mode::Fixed;
    config.failure.fixed.failed_path = 1;
    config.failure.fixed.sessions_affected = {2};

    CHECK(failure_for_session(config, 1) == std::nullopt);
    CHECK(failure_for_session(config, 2) == 1);
    CHECK(failure_for_session(config, 3) == std::nullopt);

    const auto result = run_simulation(config);
    CHECK(result.reports[0].failed_path == std::nullopt);
    CHECK(result.reports[1].failed_path == 1);
    CHECK(result.reports[2].failed_path == std::nullopt);
}

TEST_CASE("random failure draws are reproducible and cover every position") {
    auto config = base_config(StrategyKind::Nps2Rotating, 2);
    config.sessions = 200;
    config.failure.mode = FailureModel::Mode::RandomPerSession;

    std::map<std::optional<PathId>, int> histogram;
    for (int session = 1; session <= config.sessions; ++session) {
        const auto drawn = failure_for_session(config, session);
        CHECK(drawn == failure_for_session(config, session));
        ++histogram[drawn];
    }
    REQUIRE(histogram.size() == 3);  // none, path 1, path 2
    for (const auto& [position, count] : histogram) {
        CHECK(count > 30);  // crude uniformity, expected about 66
    }

    const auto result = run_simulation(config);
    for (int session = 1; session <= config.sessions; ++session) {
        CHECK(result.reports[static_cast<std::size_t>(session) - 1].failed_path ==
              failure_for_session(config, session));
    }
}

TEST_CASE("whole runs are deterministic") {
    auto config = base_config(StrategyKind::Nps1Extra, 4);
    config.sessions = 6;
    config.failure.mode = FailureModel::Mode::RandomPerSession;
    config.rng_seed = 31337;

    const auto first = run_simulation(config);
    const auto second = run_simulation(config);
    REQUIRE(first.trace.size() == second.trace.size());
    for (std::size_t i = 0; i < first.trace.size(); ++i) {
        CHECK(same_entry(first.trace[i], second.trace[i]));
    }
    CHECK(first.reports == second.reports);
}

TEST_CASE("config validation catches out-of-model requests") {
    auto config = base_config(StrategyKind::Nps2Rotating, 1);
    CHECK_THROWS_AS(resolved_config(config), ConfigError);

    config = base_config(StrategyKind::Nps2Rotating, 4);
    config.sessions = 0;
    CHECK_THROWS_AS(resolved_config(config), ConfigError);

    config = base_config(StrategyKind::Nps2Rotating, 4);
    config.payload_width = 0;
    CHECK_THROWS_AS(resolved_config(config), ConfigError);

    config = base_config(StrategyKind::Nps2Rotating, 4);
    config.dedicated_path = 2;
    CHECK_THROWS_AS(resolved_config(config), ConfigError);

    config = base_config(StrategyKind::Nps1Dedicated, 4);
    config.dedicated_path = 5;
    CHECK_THROWS_AS(resolved_config(config), ConfigError);

    config = base_config(StrategyKind::Nps2Rotating, 4);
    config.failure.mode = FailureModel::Mode::Fixed;
    CHECK_THROWS_AS(resolved_config(config), ConfigError);  // no path given

    config.failure.fixed.failed_path = 5;
    CHECK_THROWS_AS(resolved_config(config), ConfigError);

    config.failure.fixed.failed_path = kExtraPath;  // no extra path in nps2
    CHECK_THROWS_AS(resolved_config(config), ConfigError);

    config = base_config(StrategyKind::Nps1Extra, 4);
    config.failure.mode = FailureModel::Mode::Fixed;
    config.failure.fixed.failed_path = kExtraPath;
    CHECK(resolved_config(config).failure.fixed.failed_path == kExtraPath);
}

TEST_CASE("the dedicated path defaults to the last one") {
    auto config = base_config(StrategyKind::Nps1Dedicated, 5);
    CHECK(resolved_config(config).dedicated_path == 5);

    config.dedicated_path = 2;
    CHECK(resolved_config(config).dedicated_path == 2);
}

TEST_CASE("run_session rejects a mismatched schedule") {
    const auto config = base_config(StrategyKind::Nps2Rotating, 3);
    const auto schedule = build_schedule(StrategyKind::Nps2Rotating, 4);
    const auto data = generate_source_data(config, 1);
    CHECK_THROWS_AS(run_session(config, 1, schedule, data), std::logic_error);
}

}  // TEST_SUITE transport
