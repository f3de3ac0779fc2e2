#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cascade/compacton.hpp"
#include "cascade/ensemble.hpp"
#include "cascade/model.hpp"
#include "cascade/reduced.hpp"
#include "cascade/simulate.hpp"
#include "cascade/stationary.hpp"

namespace cascade {

// Shortest decimal string that round-trips, capped at 17 significant
// digits; CSV cells must survive a parse back to the identical double.
std::string format_double(double x);

// Column tag for a norm kind, e.g. "poly_2" or "dyadic_1.5".
std::string norm_tag(const NormKind& kind);

// Inverse of norm_tag; throws std::invalid_argument on an unknown family
// prefix or a malformed order.
NormKind parse_norm_tag(const std::string& tag);

// Header "t,re_b_1,im_b_1,...,re_b_N,im_b_N", one row per sample time.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

// Header "t,norm_<tag>,...", norms evaluated on each sampled state.
void write_norm_csv(std::ostream& out, const Trajectory& traj,
                    std::span<const NormKind> norms);

// Single-object JSON with the initial invariants and their worst drift.
void write_drift_json(std::ostream& out, const Trajectory& traj);

// Header "t" then mean/std/ci_lower/ci_upper per tracked norm.
void write_ensemble_csv(std::ostream& out, const EnsembleStats& stats);

// Header "j,rho"; 1-based site index.
void write_profile_csv(std::ostream& out, const PhaseLockedProfile& profile);

// Header "n,strictly_positive,min_rho,residual_max", one row per profile.
void write_scan_csv(std::ostream& out,
                    std::span<const PhaseLockedProfile> profiles);

// Header "t,dphi,drho,rho_bar,phi_bar,energy" for a packed reduced
// trajectory (states in reduced_rhs order).
void write_reduced_csv(std::ostream& out, const RealTrajectory& traj);

// Side-by-side reduced integration vs the same variables read off a full
// lattice run; dphi deviations are reported modulo pi.
void write_reduced_crosscheck_csv(std::ostream& out,
                                  std::span<const double> times,
                                  std::span<const ReducedState> reduced,
                                  std::span<const ReducedState> lattice);

// Header "t,rho_1,...,rho_N" for a density-only trajectory.
void write_density_csv(std::ostream& out, const RealTrajectory& traj);

// Header "x,q,u,residual_analytic" sampled at the given abscissae.
void write_compacton_profile_csv(std::ostream& out, const CompactonParams& p,
                                 std::span<const double> xs);

// Header "dx,max_interior,max_edge,interior_points".
void write_compacton_residual_csv(std::ostream& out,
                                  std::span<const ResidualReport> reports);

}  // namespace cascade
