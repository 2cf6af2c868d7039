#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace npsim {

// Working paths are numbered 1..n; the NPS-I extra protection path is 0.
using PathId = int;
inline constexpr PathId kExtraPath = 0;

enum class StrategyKind {
    Nps1Extra,      // n working paths plus one all-parity extra path
    Nps1Dedicated,  // one of the n working paths carries parity every round
    Nps2Rotating,   // parity duty rotates across the n paths, one round each
};

std::string_view to_string(StrategyKind kind);
std::optional<StrategyKind> strategy_from_string(std::string_view name);

enum class PayloadKind { Data, Parity };

// Caller-facing error classes. Internal invariant breaches use std::logic_error.
struct InvalidInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedFailureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CorruptedTraceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fixed-width payload, the unit of coding. A unit of W bytes behaves as 8W
/// independent bits under XOR; an all-zero unit is legal data.
class DataUnit {
  public:
    DataUnit() = default;
    explicit DataUnit(std::size_t width) : bytes_(width, 0) {}
    explicit DataUnit(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

    std::size_t width() const { return bytes_.size(); }
    bool is_zero() const;
    std::span<const std::uint8_t> bytes() const { return bytes_; }
    std::uint8_t& operator[](std::size_t i) { return bytes_[i]; }
    std::uint8_t operator[](std::size_t i) const { return bytes_[i]; }

    /// In-place XOR; widths must match.
    DataUnit& xor_with(const DataUnit& other);

    std::string to_hex() const;
    static std::optional<DataUnit> from_hex(std::string_view hex);

    friend bool operator==(const DataUnit&, const DataUnit&) = default;

  private:
    std::vector<std::uint8_t> bytes_;
};

DataUnit xor_units(const DataUnit& a, const DataUnit& b);

/// XOR of a nonempty sequence of equal-width units.
DataUnit xor_all(std::span<const DataUnit> units);

struct Packet {
    PathId sender = 0;
    PayloadKind kind = PayloadKind::Data;
    DataUnit unit;
    int round = 0;    // 1..n within the session
    int session = 0;  // 1-based
};

struct SlotAssignment {
    enum class Kind { OwnData, Parity, Idle };

    Kind kind = Kind::Idle;
    int data_index = 0;  // 1-based, meaningful only for OwnData

    static SlotAssignment own_data(int index) { return {Kind::OwnData, index}; }
    static SlotAssignment parity() { return {Kind::Parity, 0}; }
    static SlotAssignment idle() { return {Kind::Idle, 0}; }

    friend bool operator==(const SlotAssignment&, const SlotAssignment&) = default;
};

/// Which path fails, and in which sessions. A failed path drops every packet
/// for the whole session; an empty session set means every session.
struct FailureScenario {
    std::optional<PathId> failed_path;
    std::set<int> sessions_affected;

    bool affects(int session) const {
        return failed_path.has_value() &&
               (sessions_affected.empty() || sessions_affected.contains(session));
    }

    friend bool operator==(const FailureScenario&, const FailureScenario&) = default;
};

/// Exact nonnegative fraction, kept in lowest terms so equality is structural.
class Rational {
  public:
    Rational() = default;  // 0/1
    Rational(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rational operator+(const Rational& other) const;
    bool operator<(const Rational& other) const;
    friend bool operator==(const Rational&, const Rational&) = default;

    std::string to_string() const;

  private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace npsim
