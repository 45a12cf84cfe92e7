#pragma once

#include <cstdint>

namespace nunokawa {

/// Counter-based random source: every output word is a pure function of
/// (key, counter), so draws are reproducible across platforms and can be
/// partitioned over parallel workers without shared state.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    std::uint64_t key() const { return key_; }

    /// n-th word of the stream, splitmix64 style.
    std::uint64_t word(std::uint64_t counter) const {
        return finalize(key_ + (counter + 1) * golden_);
    }

    /// Uniform double in [0, 1) from the top 53 bits of word(counter).
    double uniform01(std::uint64_t counter) const {
        return static_cast<double>(word(counter) >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(std::uint64_t counter, double lo, double hi) const {
        return lo + (hi - lo) * uniform01(counter);
    }

  private:
    static constexpr std::uint64_t golden_ = 0x9E3779B97F4A7C15ull;

    static std::uint64_t finalize(std::uint64_t x) {
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    std::uint64_t key_;
};

}  // namespace nunokawa
