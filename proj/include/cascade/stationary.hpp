#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "cascade/model.hpp"

namespace cascade {

using BigInt = boost::multiprecision::cpp_int;

// Densities of a uniform-phase stationary profile: the solution of the
// tridiagonal system (diagonal -1, off-diagonals 2) rho = omega * 1.
struct PhaseLockedProfile {
    std::vector<double> rho;
    double omega = 1.0;
    bool strictly_positive = false;
    // Classification rule: min_j rho_j > positivity_tol * max_j |rho_j|.
    double positivity_tol = 1e-9;
    // Entries with |rho_j| <= positivity_tol * max_j |rho_j| sit on the
    // classification boundary and deserve an exact re-solve.
    bool near_zero_entries = false;
    double residual_max = 0.0;

    std::size_t size() const { return rho.size(); }
};

// Determinant of the N x N coupling matrix by the exact integer recursion
// det_N = -det_{N-1} - 4 det_{N-2}, det_1 = -1, det_2 = -3.
BigInt coupling_determinant(int n);

// Solves the coupling system for the common phase speed omega (!= 0) and
// classifies strict positivity.
PhaseLockedProfile solve_phase_locked(int n, double omega);

// All N in [1, n_max] whose profile is strictly positive, sorted.
std::vector<int> scan_positive(int n_max, double omega);

// Places the given profiles at 1-based start offsets inside a Dirichlet
// lattice of size n_total, with a common initial phase on the supports and
// zeros elsewhere. Blocks must share omega and be separated by at least
// one zero site.
State embed_blocks(const std::vector<PhaseLockedProfile>& blocks,
                   const std::vector<int>& offsets, int n_total, double phase);

}  // namespace cascade
