#pragma once

#include <vector>

#include "cascade/model.hpp"

namespace cascade {

enum class CompactonForm { Cosine, Sine };

struct CompactonParams {
    double h = 1.0;                           // lattice spacing in the ODE
    CompactonForm form = CompactonForm::Cosine;
    // First-integral level; only the c = 0 orbit has a closed form, so any
    // other value is rejected.
    double c = 0.0;
};

void validate(const CompactonParams& p);

// Half-width of the cosine support: the profile is sqrt(2/3) cos(k x) on
// (-w, w) with k = sqrt(3/2)/(2h), w = h*pi*sqrt(2/3), and zero outside.
// The sine form is the same bump shifted onto (0, 2w).
double support_half_width(const CompactonParams& p);

// Q(x); exactly zero off the support.
double compacton_profile(const CompactonParams& p, double x);

// Second derivative of Q^2 at x, analytic.
double compacton_u_second_derivative(const CompactonParams& p, double x);

// Pointwise residual of Q - 3Q^3 - 2h^2 Q (Q^2)'' = 0 with the analytic
// (Q^2)''; zero on and off the support up to roundoff.
double compacton_ode_residual_analytic(const CompactonParams& p, double x);

struct ResidualReport {
    double max_interior = 0.0;  // strictly inside the support, away from edges
    double max_edge = 0.0;      // grid points adjacent to the support edges
    double dx = 0.0;
    int interior_points = 0;
};

// Residual of the profile equation with (Q^2)'' replaced by a centered
// second difference of spacing dx. The grid is snapped so the support
// endpoints are grid points; otherwise the one-sided kink error at the
// edges dominates at first order and never settles.
ResidualReport compacton_fd_residual(const CompactonParams& p, double dx);

// max |2h^2 U'' + 3U - 1| over the open support for U = Q^2, analytic.
double max_u_equation_residual(const CompactonParams& p, int samples);

// max |h^2 U'^2 + (3/2)U^2 - U| over the support; the profile sits on the
// zero level of this first integral.
double max_first_integral_residual(const CompactonParams& p, int samples);

// Samples the profile onto lattice sites b_j = Q(h*(j - center)) with the
// bump centered at 1-based site `center`; phases are zero and the state
// is Dirichlet. Throws std::invalid_argument if any site the support
// reaches would fall outside [1, n].
State lattice_ic_from_profile(const CompactonParams& p, int n, int center);

}  // namespace cascade
