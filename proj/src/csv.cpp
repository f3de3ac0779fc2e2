#include "cascade/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cascade {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string norm_tag(const NormKind& kind) {
    const char* family =
        kind.family == NormFamily::PolynomialSobolev ? "poly_" : "dyadic_";
    return family + format_double(kind.s);
}

NormKind parse_norm_tag(const std::string& tag) {
    NormKind kind;
    std::string rest;
    if (tag.rfind("poly_", 0) == 0) {
        kind.family = NormFamily::PolynomialSobolev;
        rest = tag.substr(5);
    } else if (tag.rfind("dyadic_", 0) == 0) {
        kind.family = NormFamily::Dyadic;
        rest = tag.substr(7);
    } else {
        throw std::invalid_argument("norm tag \"" + tag +
                                    "\" must start with poly_ or dyadic_");
    }
    char* end = nullptr;
    kind.s = std::strtod(rest.c_str(), &end);
    if (rest.empty() || end != rest.c_str() + rest.size() ||
        !std::isfinite(kind.s)) {
        throw std::invalid_argument("norm tag \"" + tag +
                                    "\" has a malformed order");
    }
    return kind;
}

namespace {

void require_rows(std::size_t n, const char* what) {
    if (n == 0) {
        throw std::invalid_argument(std::string(what) + " has no rows to write");
    }
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    require_rows(traj.times.size(), "trajectory");
    const std::size_t n = traj.states.front().b.size();
    out << "t";
    for (std::size_t j = 1; j <= n; ++j) {
        out << ",re_b_" << j << ",im_b_" << j;
    }
    out << "\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        out << format_double(traj.times[i]);
        for (const Complex& b : traj.states[i].b) {
            out << ',' << format_double(b.real()) << ',' << format_double(b.imag());
        }
        out << "\n";
    }
}

void write_norm_csv(std::ostream& out, const Trajectory& traj,
                    std::span<const NormKind> norms) {
    require_rows(traj.times.size(), "trajectory");
    if (norms.empty()) {
        throw std::invalid_argument("no norms selected for the norm table");
    }
    out << "t";
    for (const NormKind& kind : norms) {
        out << ",norm_" << norm_tag(kind);
    }
    out << "\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        out << format_double(traj.times[i]);
        for (const NormKind& kind : norms) {
            out << ',' << format_double(lattice_norm(traj.states[i], kind));
        }
        out << "\n";
    }
}

void write_drift_json(std::ostream& out, const Trajectory& traj) {
    const InvariantDrift d = invariant_drift(traj);
    out << "{\"initial_mass\":" << format_double(traj.initial_mass)
        << ",\"initial_hamiltonian\":" << format_double(traj.initial_hamiltonian)
        << ",\"max_abs_mass_drift\":" << format_double(d.max_abs_mass)
        << ",\"max_rel_mass_drift\":" << format_double(d.max_rel_mass)
        << ",\"max_abs_hamiltonian_drift\":" << format_double(d.max_abs_hamiltonian)
        << ",\"max_rel_hamiltonian_drift\":" << format_double(d.max_rel_hamiltonian)
        << ",\"rel_mass_valid\":" << (d.rel_mass_valid ? "true" : "false")
        << ",\"rel_hamiltonian_valid\":" << (d.rel_hamiltonian_valid ? "true" : "false")
        << ",\"samples\":" << traj.times.size() << "}\n";
}

void write_ensemble_csv(std::ostream& out, const EnsembleStats& stats) {
    require_rows(stats.sample_times.size(), "ensemble statistics");
    out << "t";
    for (const NormKind& kind : stats.norms) {
        const std::string tag = norm_tag(kind);
        out << ",mean_" << tag << ",std_" << tag << ",ci_lower_" << tag
            << ",ci_upper_" << tag;
    }
    out << "\n";
    for (std::size_t ti = 0; ti < stats.sample_times.size(); ++ti) {
        out << format_double(stats.sample_times[ti]);
        for (std::size_t ni = 0; ni < stats.norms.size(); ++ni) {
            const CiResult& cell = stats.stats[ti][ni];
            out << ',' << format_double(cell.mean) << ',' << format_double(cell.stddev)
                << ',' << format_double(cell.ci_lower) << ','
                << format_double(cell.ci_upper);
        }
        out << "\n";
    }
}

void write_profile_csv(std::ostream& out, const PhaseLockedProfile& profile) {
    require_rows(profile.rho.size(), "profile");
    out << "j,rho\n";
    for (std::size_t i = 0; i < profile.rho.size(); ++i) {
        out << (i + 1) << ',' << format_double(profile.rho[i]) << "\n";
    }
}

void write_scan_csv(std::ostream& out,
                    std::span<const PhaseLockedProfile> profiles) {
    out << "n,strictly_positive,min_rho,residual_max\n";
    for (const PhaseLockedProfile& p : profiles) {
        double min_rho = p.rho.empty() ? 0.0 : p.rho.front();
        for (double r : p.rho) min_rho = std::min(min_rho, r);
        out << p.rho.size() << ',' << (p.strictly_positive ? 1 : 0) << ','
            << format_double(min_rho) << ',' << format_double(p.residual_max)
            << "\n";
    }
}

void write_reduced_csv(std::ostream& out, const RealTrajectory& traj) {
    require_rows(traj.times.size(), "reduced trajectory");
    out << "t,dphi,drho,rho_bar,phi_bar,energy\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& y = traj.states[i];
        ReducedState r{y[0], y[1], y[2], y[3]};
        out << format_double(traj.times[i]) << ',' << format_double(r.dphi) << ','
            << format_double(r.drho) << ',' << format_double(r.rho_bar) << ','
            << format_double(r.phi_bar) << ','
            << format_double(reduced_hamiltonian(r)) << "\n";
    }
}

void write_reduced_crosscheck_csv(std::ostream& out,
                                  std::span<const double> times,
                                  std::span<const ReducedState> reduced,
                                  std::span<const ReducedState> lattice) {
    require_rows(times.size(), "cross-check table");
    if (reduced.size() != times.size() || lattice.size() != times.size()) {
        throw std::invalid_argument("cross-check columns differ in length");
    }
    out << "t,dphi_reduced,drho_reduced,rho_bar_reduced,phi_bar_reduced"
           ",dphi_lattice,drho_lattice,rho_bar_lattice,phi_bar_lattice"
           ",dphi_mismatch_mod_pi,drho_mismatch\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        const ReducedState& r = reduced[i];
        const ReducedState& l = lattice[i];
        out << format_double(times[i]) << ',' << format_double(r.dphi) << ','
            << format_double(r.drho) << ',' << format_double(r.rho_bar) << ','
            << format_double(r.phi_bar) << ',' << format_double(l.dphi) << ','
            << format_double(l.drho) << ',' << format_double(l.rho_bar) << ','
            << format_double(l.phi_bar) << ','
            << format_double(std::abs(angle_difference_mod_pi(r.dphi, l.dphi)))
            << ',' << format_double(std::abs(r.drho - l.drho)) << "\n";
    }
}

void write_density_csv(std::ostream& out, const RealTrajectory& traj) {
    require_rows(traj.times.size(), "density trajectory");
    const std::size_t n = traj.states.front().size();
    out << "t";
    for (std::size_t j = 1; j <= n; ++j) out << ",rho_" << j;
    out << "\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        out << format_double(traj.times[i]);
        for (double r : traj.states[i]) out << ',' << format_double(r);
        out << "\n";
    }
}

void write_compacton_profile_csv(std::ostream& out, const CompactonParams& p,
                                 std::span<const double> xs) {
    require_rows(xs.size(), "profile sample list");
    out << "x,q,u,residual_analytic\n";
    for (double x : xs) {
        const double q = compacton_profile(p, x);
        out << format_double(x) << ',' << format_double(q) << ','
            << format_double(q * q) << ','
            << format_double(compacton_ode_residual_analytic(p, x)) << "\n";
    }
}

void write_compacton_residual_csv(std::ostream& out,
                                  std::span<const ResidualReport> reports) {
    require_rows(reports.size(), "residual table");
    out << "dx,max_interior,max_edge,interior_points\n";
    for (const ResidualReport& r : reports) {
        out << format_double(r.dx) << ',' << format_double(r.max_interior) << ','
            << format_double(r.max_edge) << ',' << r.interior_points << "\n";
    }
}

}  // namespace cascade
