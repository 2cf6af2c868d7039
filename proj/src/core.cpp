#include <npsim/core.hpp>

#include <numeric>

namespace npsim {

std::string_view to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::Nps1Extra: return "nps1-extra";
        case StrategyKind::Nps1Dedicated: return "nps1-dedicated";
        case StrategyKind::Nps2Rotating: return "nps2";
    }
    throw std::logic_error("unknown StrategyKind");
}

std::optional<StrategyKind> strategy_from_string(std::string_view name) {
    if (name == "nps1-extra") return StrategyKind::Nps1Extra;
    if (name == "nps1-dedicated") return StrategyKind::Nps1Dedicated;
    if (name == "nps2") return StrategyKind::Nps2Rotating;
    return std::nullopt;
}

bool DataUnit::is_zero() const {
    for (std::uint8_t b : bytes_) {
        if (b != 0) return false;
    }
    return true;
}

DataUnit& DataUnit::xor_with(const DataUnit& other) {
    if (other.width() != width()) {
        throw InvalidInputError("xor width mismatch: " + std::to_string(width()) + " vs " +
                                std::to_string(other.width()) + " bytes");
    }
    for (std::size_t i = 0; i < bytes_.size(); ++i) {
        bytes_[i] ^= other.bytes_[i];
    }
    return *this;
}

std::string DataUnit::to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string hex;
    hex.reserve(bytes_.size() * 2);
    for (std::uint8_t b : bytes_) {
        hex.push_back(digits[b >> 4]);
        hex.push_back(digits[b & 0x0f]);
    }
    return hex;
}

std::optional<DataUnit> DataUnit::from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) return std::nullopt;
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    std::vector<std::uint8_t> bytes;
    bytes.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        int hi = nibble(hex[i]);
        int lo = nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) return std::nullopt;
        bytes.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return DataUnit(std::move(bytes));
}

DataUnit xor_units(const DataUnit& a, const DataUnit& b) {
    DataUnit result = a;
    result.xor_with(b);
    return result;
}

DataUnit xor_all(std::span<const DataUnit> units) {
    if (units.empty()) {
        throw InvalidInputError("xor_all over an empty sequence");
    }
    DataUnit acc = units[0];
    for (std::size_t i = 1; i < units.size(); ++i) {
        acc.xor_with(units[i]);
    }
    return acc;
}

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ <= 0) {
        throw InvalidInputError("rational denominator must be positive");
    }
    if (num_ < 0) {
        throw InvalidInputError("rational numerator must be nonnegative");
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::operator+(const Rational& other) const {
    return Rational(num_ * other.den_ + other.num_ * den_, den_ * other.den_);
}

bool Rational::operator<(const Rational& other) const {
    return num_ * other.den_ < other.num_ * den_;
}

std::string Rational::to_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace npsim
