#pragma once

#include <span>
#include <vector>

#include "cascade/integrator.hpp"
#include "cascade/model.hpp"

namespace cascade {

// Deviation of the invariants from their t = 0 values at one sample time.
struct DriftSample {
    double abs_mass = 0.0;
    double rel_mass = 0.0;
    double abs_hamiltonian = 0.0;
    double rel_hamiltonian = 0.0;
};

// Time-stamped lattice states plus the invariant-drift record.
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<DriftSample> drift;
    double initial_mass = 0.0;
    double initial_hamiltonian = 0.0;
    StepStats stats;
};

struct InvariantDrift {
    double max_abs_mass = 0.0;
    double max_rel_mass = 0.0;
    double max_abs_hamiltonian = 0.0;
    double max_rel_hamiltonian = 0.0;
    // Relative drift is skipped when the t = 0 value is below 1e-30.
    bool rel_mass_valid = true;
    bool rel_hamiltonian_valid = true;
};

// Integrates the lattice flow in Cartesian form and samples at the given
// times. sample_times must be strictly increasing within [t0, t1].
Trajectory simulate(const State& initial, double t0, double t1,
                    std::span<const double> sample_times,
                    const IntegratorConfig& cfg = {});

// Maxima of the drift record over all sample times; throws
// std::domain_error on an empty trajectory.
InvariantDrift invariant_drift(const Trajectory& traj);

}  // namespace cascade
