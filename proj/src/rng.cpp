#include "cascade/rng.hpp"

#include <numbers>

namespace cascade {

std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t index) {
    // Equals the (index+1)-th output of SplitMix64(master_seed): distinct
    // indexes map to distinct, well-mixed seeds.
    SplitMix64 g(master_seed + index * 0x9E3779B97F4A7C15ULL);
    return g.next();
}

std::vector<double> uniform_phases(SplitMix64& rng, int n) {
    std::vector<double> phases(n);
    for (double& p : phases) p = 2.0 * std::numbers::pi * rng.next_double();
    return phases;
}

}  // namespace cascade
