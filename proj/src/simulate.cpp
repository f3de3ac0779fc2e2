#include "cascade/simulate.hpp"

#include <cmath>
#include <stdexcept>

namespace cascade {

namespace {

DriftSample drift_against(const State& state, double m0, double h0) {
    DriftSample d;
    const double m = mass(state);
    const double h = hamiltonian(state);
    d.abs_mass = std::abs(m - m0);
    d.abs_hamiltonian = std::abs(h - h0);
    d.rel_mass = std::abs(m0) >= 1e-30 ? d.abs_mass / std::abs(m0) : 0.0;
    d.rel_hamiltonian =
        std::abs(h0) >= 1e-30 ? d.abs_hamiltonian / std::abs(h0) : 0.0;
    return d;
}

}  // namespace

Trajectory simulate(const State& initial, double t0, double t1,
                    std::span<const double> sample_times,
                    const IntegratorConfig& cfg) {
    validate(initial);
    const std::size_t n = initial.size();
    const BoundaryCondition bc = initial.bc;

    std::vector<double> y0(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        y0[2 * j] = initial.b[j].real();
        y0[2 * j + 1] = initial.b[j].imag();
    }

    const Rhs rhs = [n, bc](double, std::span<const double> y,
                            std::span<double> dydt) {
        rhs_cartesian_packed(y.data(), dydt.data(), n, bc);
    };

    RealTrajectory rt = integrate(rhs, y0, t0, t1, sample_times, cfg);

    Trajectory traj;
    traj.times = std::move(rt.times);
    traj.stats = rt.stats;
    traj.initial_mass = mass(initial);
    traj.initial_hamiltonian = hamiltonian(initial);
    traj.states.reserve(traj.times.size());
    traj.drift.reserve(traj.times.size());
    for (const auto& packed : rt.states) {
        State s;
        s.bc = bc;
        s.b.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            s.b[j] = Complex(packed[2 * j], packed[2 * j + 1]);
        }
        traj.drift.push_back(
            drift_against(s, traj.initial_mass, traj.initial_hamiltonian));
        traj.states.push_back(std::move(s));
    }
    return traj;
}

InvariantDrift invariant_drift(const Trajectory& traj) {
    if (traj.times.empty()) throw std::domain_error("empty trajectory");
    InvariantDrift d;
    d.rel_mass_valid = std::abs(traj.initial_mass) >= 1e-30;
    d.rel_hamiltonian_valid = std::abs(traj.initial_hamiltonian) >= 1e-30;
    for (const auto& s : traj.drift) {
        d.max_abs_mass = std::max(d.max_abs_mass, s.abs_mass);
        d.max_rel_mass = std::max(d.max_rel_mass, s.rel_mass);
        d.max_abs_hamiltonian = std::max(d.max_abs_hamiltonian, s.abs_hamiltonian);
        d.max_rel_hamiltonian =
            std::max(d.max_rel_hamiltonian, s.rel_hamiltonian);
    }
    return d;
}

}  // namespace cascade
