#pragma once

#include <cstdint>

namespace hbench {

/// Counter-based pseudo-random generator (SplitMix64).
///
/// Each draw advances an internal counter by the 64-bit golden-ratio
/// increment and finalizes it with the SplitMix64 mixer, so the n-th output
/// is a pure function of (state0, n). Independent streams are derived as
/// seed XOR stream-index fed through one extra mixing round, which makes
/// Monte Carlo results reproducible bit-for-bit regardless of how trials
/// are scheduled across workers.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : state_(seed) {}

    /// Stream `index` of a master seed. stream(s, i) and stream(s, j) are
    /// statistically independent for i != j.
    static CounterRng stream(std::uint64_t seed, std::uint64_t index) {
        return CounterRng(mix(seed ^ mix(index + 0x9E3779B97F4A7C15ULL)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + next_double() * (hi - lo);
    }

    /// Integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

/// Deterministic sub-seed for a labelled piece of work (model index, grid
/// index, ...). Chains the mixer so distinct label tuples give unrelated
/// streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b = 0) {
    return CounterRng::mix(seed ^ CounterRng::mix(a + 1) ^
                           CounterRng::mix((b + 1) * 0xD1342543DE82EF95ULL));
}

} // namespace hbench
