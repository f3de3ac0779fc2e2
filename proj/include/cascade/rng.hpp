#pragma once

#include <cstdint>
#include <vector>

namespace cascade {

// SplitMix64: tiny, fast, and stable across platforms, so streams are
// reproducible from the seed alone with no library dependence.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

// Mixes a master seed with a realization index into an independent
// per-realization seed; avoids overlapping streams without coordination.
std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t index);

// n phases uniform on [0, 2*pi).
std::vector<double> uniform_phases(SplitMix64& rng, int n);

}  // namespace cascade
