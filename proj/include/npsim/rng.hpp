#pragma once

#include <cstdint>

namespace npsim {

/// SplitMix64 (Steele, Lea and Flood, 2014). Fixed algorithm, so seeded runs
/// reproduce bit-for-bit on any platform.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Draw in [0, bound) via 64x64 fixed-point multiply. bound must be > 0.
    std::uint64_t bounded(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

  private:
    std::uint64_t state_;
};

/// Independent stream seed for (base, tag, index): two chained SplitMix64
/// steps, each keyed by one coordinate. Distinct tags give unrelated streams.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag, std::uint64_t index) {
    SplitMix64 outer(base ^ (0x9e3779b97f4a7c15ull * (tag + 1)));
    SplitMix64 inner(outer.next() ^ (0xbf58476d1ce4e5b9ull * (index + 1)));
    return inner.next();
}

}  // namespace npsim
