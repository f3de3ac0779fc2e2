#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace cascade {

using Complex = std::complex<double>;

// Ghost-value convention at the lattice ends.
enum class BoundaryCondition { Dirichlet, Periodic };

// Complex amplitude vector b_1..b_N, the fundamental dynamical object.
struct State {
    std::vector<Complex> b;
    BoundaryCondition bc = BoundaryCondition::Dirichlet;

    std::size_t size() const { return b.size(); }
};

// Density/phase image of a State: rho_j = |b_j|^2, phi_j = arg b_j.
struct HydroState {
    std::vector<double> rho;
    std::vector<double> phi;
    BoundaryCondition bc = BoundaryCondition::Dirichlet;

    std::size_t size() const { return rho.size(); }
};

enum class NormFamily { PolynomialSobolev, Dyadic };

// Weighted lattice norm selector. PolynomialSobolev weights |b_j|^2 by
// j^(2s); Dyadic weights by 2^((s-1)j).
struct NormKind {
    NormFamily family = NormFamily::PolynomialSobolev;
    double s = 1.0;
};

// Throws std::invalid_argument if the state is empty or has non-finite
// entries.
void validate(const State& state);
void validate(const HydroState& hstate);

// d b_j/dt = i(-|b_j|^2 b_j + 2 b_{j-1}^2 conj(b_j) + 2 b_{j+1}^2 conj(b_j))
std::vector<Complex> rhs_cartesian(const State& state);

// Same right-hand side on an interleaved [re_1, im_1, re_2, im_2, ...]
// buffer; no validation, used on the integration hot path.
void rhs_cartesian_packed(const double* y, double* dydt, std::size_t n,
                          BoundaryCondition bc);

// Hydrodynamic right-hand side; returns (dphi/dt, drho/dt).
std::pair<std::vector<double>, std::vector<double>> rhs_hydro(
    const HydroState& hstate);

// Density-only transport system drho_j/dt = -4 rho_j rho_{j-1} + 4 rho_j rho_{j+1}.
std::vector<double> rhs_discrete_burgers(const std::vector<double>& rho,
                                         BoundaryCondition bc);

// Conserved quantities of the lattice flow.
double mass(const State& state);
double hamiltonian(const State& state);

double lattice_norm(const State& state, const NormKind& norm);

// Madelung transform pair. to_hydro uses principal-value phases in
// (-pi, pi] and the convention phi = 0 where b = 0; from_hydro rejects
// negative densities with std::domain_error.
HydroState to_hydro(const State& state);
State from_hydro(const HydroState& hstate);

}  // namespace cascade
