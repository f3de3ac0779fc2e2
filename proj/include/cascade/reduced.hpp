#pragma once

#include <array>

#include "cascade/integrator.hpp"
#include "cascade/model.hpp"

namespace cascade {

// Period-2 reduction of the periodic lattice: phase difference, density
// difference, and the conserved/slaved pair sums of one adjacent pair.
struct ReducedState {
    double dphi = 0.0;     // phi_j - phi_{j-1}
    double drho = 0.0;     // rho_j - rho_{j-1}
    double rho_bar = 1.0;  // rho_j + rho_{j-1}, conserved
    double phi_bar = 0.0;  // phi_j + phi_{j-1}
};

void validate(const ReducedState& r);

// Derivatives in the order (dphi, drho, rho_bar, phi_bar); rho_bar is
// exactly stationary.
std::array<double, 4> reduced_rhs(const ReducedState& r);

// H = (1/2)(1 + 4 cos 2dphi)(rho_bar^2 - drho^2), conserved by reduced_rhs.
double reduced_hamiltonian(const ReducedState& r);

// Expands the reduced variables onto an even-size periodic lattice: odd
// (1-based) sites carry ((rho_bar - drho)/2, (phi_bar - dphi)/2), even
// sites the + signs.
State lift_to_lattice(const ReducedState& r, int n);

// Reads the reduced variables back off the first adjacent pair of a
// lattice state; phases are principal values, so dphi is only meaningful
// modulo pi.
ReducedState extract_reduced(const State& state);

// Signed distance between two phase differences modulo pi, in
// (-pi/2, pi/2].
double angle_difference_mod_pi(double a, double b);

// Integrates the four reduced variables; states are packed in rhs order.
RealTrajectory integrate_reduced(const ReducedState& r0, double t0, double t1,
                                 std::span<const double> sample_times,
                                 const IntegratorConfig& cfg = {});

// First return time to the section drho = 0 crossed with drho increasing.
// Throws std::runtime_error if no return with |state - initial| <=
// match_tol is found before t_max.
double find_return_time(const ReducedState& r0, double t_max,
                        const IntegratorConfig& cfg = {},
                        double match_tol = 1e-6);

}  // namespace cascade
