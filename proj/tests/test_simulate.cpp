#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cascade/rng.hpp"
#include "cascade/simulate.hpp"

using namespace cascade;

namespace {

// Mass parked at one site with small uniform spillover, random phases.
State localized_ic(int n, double eps, int jstar, std::uint64_t seed) {
    SplitMix64 rng(seed);
    auto phases = uniform_phases(rng, n);
    State s;
    s.b.resize(n);
    for (int j = 0; j < n; ++j) {
        const double amp = (j + 1 == jstar) ? std::sqrt(1.0 - eps * eps)
                                            : eps / (n - 1);
        s.b[j] = Complex(amp * std::cos(phases[j]), amp * std::sin(phases[j]));
    }
    return s;
}

}  // namespace

TEST_CASE("zero state stays put and flags relative drift as unusable") {
    State z;
    z.b.assign(4, Complex(0.0, 0.0));
    const std::vector<double> samples{0.0, 1.0, 2.0};
    auto traj = simulate(z, 0.0, 2.0, samples);
    auto d = invariant_drift(traj);
    CHECK(d.max_abs_mass == 0.0);
    CHECK(d.max_abs_hamiltonian == 0.0);
    CHECK_FALSE(d.rel_mass_valid);
    CHECK_FALSE(d.rel_hamiltonian_valid);
}

TEST_CASE("single mode holds its invariants to 1e-9 over t=100") {
    State s;
    s.b = {Complex(1.0, 0.0)};
    std::vector<double> samples;
    for (int i = 0; i <= 20; ++i) samples.push_back(5.0 * i);
    auto traj = simulate(s, 0.0, 100.0, samples);
    auto d = invariant_drift(traj);
    CHECK(d.max_abs_mass <= 1e-9);
    CHECK(d.max_rel_mass <= 1e-9);
    CHECK(d.max_abs_hamiltonian <= 1e-9);
    CHECK(d.max_rel_hamiltonian <= 1e-9);

    // |b| = 1 is conserved, so the motion is the rotation e^{-it}.
    const Complex want = std::exp(Complex(0.0, -100.0));
    CHECK(std::abs(traj.states.back().b[0] - want) <= 1e-10);
}

TEST_CASE("seeded lattice run keeps relative drift below 1e-9") {
    State ic = localized_ic(100, 0.1, 10, realization_seed(1, 0));
    const std::vector<double> samples{50.0, 100.0, 150.0, 200.0};
    auto traj = simulate(ic, 0.0, 200.0, samples);
    auto d = invariant_drift(traj);
    CHECK(d.max_rel_mass <= 1e-9);
    CHECK(d.max_rel_hamiltonian <= 1e-9);
}

TEST_CASE("trajectory records the initial invariants and exact times") {
    State ic = localized_ic(12, 0.2, 3, 7);
    const std::vector<double> samples{0.5, 1.0};
    auto traj = simulate(ic, 0.0, 1.0, samples);
    CHECK(traj.initial_mass == mass(ic));
    CHECK(traj.initial_hamiltonian == hamiltonian(ic));
    REQUIRE(traj.times.size() == 2);
    CHECK(traj.times[0] == 0.5);
    CHECK(traj.times[1] == 1.0);
    CHECK(traj.states[0].bc == ic.bc);
}

TEST_CASE("periodic lattice conserves invariants too") {
    State ic = localized_ic(16, 0.3, 5, 11);
    ic.bc = BoundaryCondition::Periodic;
    const std::vector<double> samples{10.0};
    auto traj = simulate(ic, 0.0, 10.0, samples);
    auto d = invariant_drift(traj);
    CHECK(d.max_rel_mass <= 1e-9);
    CHECK(d.max_rel_hamiltonian <= 1e-9);
}

TEST_CASE("empty trajectory has no drift summary") {
    Trajectory t;
    CHECK_THROWS_AS(invariant_drift(t), std::domain_error);
}
