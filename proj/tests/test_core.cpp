#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <vector>

#include <npsim/core.hpp>
#include <npsim/rng.hpp>

using namespace npsim;

namespace {

DataUnit unit_of(std::initializer_list<std::uint8_t> bytes) {
    return DataUnit(std::vector<std::uint8_t>(bytes));
}

// Independent parity reference: fold each bit position separately.
DataUnit bitwise_parity(const std::vector<DataUnit>& units) {
    DataUnit result(units.front().width());
    for (std::size_t byte = 0; byte < result.width(); ++byte) {
        for (int bit = 0; bit < 8; ++bit) {
            int ones = 0;
            for (const DataUnit& u : units) {
                ones += (u[byte] >> bit) & 1;
            }
            if (ones % 2 == 1) {
                result[byte] = static_cast<std::uint8_t>(result[byte] | (1u << bit));
            }
        }
    }
    return result;
}

DataUnit random_unit(SplitMix64& gen, std::size_t width) {
    DataUnit u(width);
    for (std::size_t i = 0; i < width; ++i) {
        u[i] = static_cast<std::uint8_t>(gen.next() & 0xff);
    }
    return u;
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("xor of two single-byte units") {
    CHECK(xor_units(unit_of({0xff}), unit_of({0x0f})) == unit_of({0xf0}));
}

TEST_CASE("xor with the zero unit is the identity") {
    const DataUnit u = unit_of({0xde, 0xad, 0xbe, 0xef});
    CHECK(xor_units(DataUnit(4), u) == u);
    CHECK(xor_units(u, DataUnit(4)) == u);
}

TEST_CASE("xor is its own inverse") {
    SplitMix64 gen(99);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t width = 1 + gen.next() % 16;
        const DataUnit a = random_unit(gen, width);
        const DataUnit b = random_unit(gen, width);
        CHECK(xor_units(xor_units(a, b), b) == a);
        CHECK(xor_units(a, a).is_zero());
    }
}

TEST_CASE("xor rejects width mismatch") {
    CHECK_THROWS_AS(xor_units(unit_of({0x01}), unit_of({0x01, 0x02})), InvalidInputError);
}

TEST_CASE("xor_all of one unit is that unit") {
    const std::vector<DataUnit> units{unit_of({0x5a, 0x5a})};
    CHECK(xor_all(units) == units[0]);
}

TEST_CASE("xor_all matches the bitwise parity reference") {
    CHECK(xor_all(std::vector<DataUnit>{unit_of({0x01}), unit_of({0x02}), unit_of({0x04})}) ==
          unit_of({0x07}));

    SplitMix64 gen(7);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t width = 1 + gen.next() % 12;
        std::vector<DataUnit> units;
        for (std::uint64_t i = 0, count = 2 + gen.next() % 6; i < count; ++i) {
            units.push_back(random_unit(gen, width));
        }
        CHECK(xor_all(units) == bitwise_parity(units));
    }
}

TEST_CASE("xor_all is order independent") {
    SplitMix64 gen(8);
    std::vector<DataUnit> units;
    for (int i = 0; i < 6; ++i) units.push_back(random_unit(gen, 8));
    const DataUnit expected = xor_all(units);
    std::reverse(units.begin(), units.end());
    CHECK(xor_all(units) == expected);
}

TEST_CASE("xor_all rejects an empty sequence") {
    CHECK_THROWS_AS(xor_all(std::vector<DataUnit>{}), InvalidInputError);
}

TEST_CASE("the all-zero unit is legal data, not absence") {
    const DataUnit zero(8);
    CHECK(zero.is_zero());
    CHECK(zero == DataUnit(8));
    CHECK(xor_units(zero, zero).is_zero());
}

TEST_CASE("hex round trip") {
    const DataUnit u = unit_of({0x00, 0xab, 0xff, 0x10});
    CHECK(u.to_hex() == "00abff10");
    CHECK(DataUnit::from_hex("00abff10") == u);
    CHECK(DataUnit::from_hex("00ABFF10") == u);
    CHECK_FALSE(DataUnit::from_hex("abc").has_value());
    CHECK_FALSE(DataUnit::from_hex("zz").has_value());
}

TEST_CASE("rational reduces to lowest terms") {
    CHECK(Rational(6, 8) == Rational(3, 4));
    CHECK(Rational(6, 8).num() == 3);
    CHECK(Rational(6, 8).den() == 4);
    CHECK(Rational(0, 5) == Rational(0, 1));
}

TEST_CASE("rational addition is exact") {
    CHECK(Rational(2, 3) + Rational(1, 3) == Rational(1, 1));
    for (int n = 2; n <= 64; ++n) {
        CHECK(Rational(n - 1, n) + Rational(1, n) == Rational(1, 1));
    }
}

TEST_CASE("rational ordering by cross multiplication") {
    CHECK(Rational(2, 3) < Rational(3, 4));
    CHECK_FALSE(Rational(3, 4) < Rational(3, 4));
}

TEST_CASE("rational rejects nonpositive denominators and negative numerators") {
    CHECK_THROWS_AS(Rational(1, 0), InvalidInputError);
    CHECK_THROWS_AS(Rational(1, -2), InvalidInputError);
    CHECK_THROWS_AS(Rational(-1, 2), InvalidInputError);
}

TEST_CASE("strategy names round trip") {
    for (StrategyKind kind : {StrategyKind::Nps1Extra, StrategyKind::Nps1Dedicated,
                              StrategyKind::Nps2Rotating}) {
        CHECK(strategy_from_string(to_string(kind)) == kind);
    }
    CHECK_FALSE(strategy_from_string("nps3").has_value());
}

TEST_CASE("failure scenario session filter") {
    FailureScenario none;
    CHECK_FALSE(none.affects(1));

    FailureScenario all_sessions{.failed_path = 2, .sessions_affected = {}};
    CHECK(all_sessions.affects(1));
    CHECK(all_sessions.affects(99));

    FailureScenario some{.failed_path = 2, .sessions_affected = {3, 5}};
    CHECK_FALSE(some.affects(1));
    CHECK(some.affects(3));
    CHECK(some.affects(5));
}

// Reference outputs computed with an independent implementation of the
// published SplitMix64 algorithm.
TEST_CASE("splitmix64 matches reference vectors") {
    SplitMix64 a(1234567);
    CHECK(a.next() == 0x599ed017fb08fc85ull);
    CHECK(a.next() == 0x2c73f08458540fa5ull);
    CHECK(a.next() == 0x883ebce5a3f27c77ull);

    SplitMix64 b(0);
    CHECK(b.next() == 0xe220a8397b1dcdafull);
    CHECK(b.next() == 0x6e789e6aa1b965f4ull);
}

TEST_CASE("bounded draws match the fixed-point reference") {
    SplitMix64 gen(42);
    const std::vector<std::uint64_t> expected{3, 0, 1, 1, 0, 4};
    for (std::uint64_t want : expected) {
        CHECK(gen.bounded(5) == want);
    }
}

TEST_CASE("bounded draws stay in range and hit every value") {
    SplitMix64 gen(11);
    std::vector<int> seen(7, 0);
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t v = gen.bounded(7);
        REQUIRE(v < 7);
        ++seen[static_cast<std::size_t>(v)];
    }
    for (int count : seen) CHECK(count > 0);
}

TEST_CASE("derive_seed separates streams by tag and index") {
    CHECK(derive_seed(7, 0x64617461, 1) == 0x5088467a8f575203ull);
    CHECK(derive_seed(7, 0x6661696c, 1) == 0x66268b82273f1119ull);
    CHECK(derive_seed(7, 0x64617461, 2) == 0x349b1dc41a00378cull);

    CHECK(derive_seed(7, 1, 1) == derive_seed(7, 1, 1));
    CHECK(derive_seed(7, 1, 1) != derive_seed(8, 1, 1));
    CHECK(derive_seed(7, 1, 1) != derive_seed(7, 2, 1));
    CHECK(derive_seed(7, 1, 1) != derive_seed(7, 1, 2));
}

}  // TEST_SUITE core
