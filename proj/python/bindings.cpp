// Python bindings for the lattice toolkit. Arrays cross the boundary as
// numpy buffers; enums cross as the same strings the CLI accepts.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cascade/compacton.hpp"
#include "cascade/csv.hpp"
#include "cascade/ensemble.hpp"
#include "cascade/integrator.hpp"
#include "cascade/model.hpp"
#include "cascade/reduced.hpp"
#include "cascade/rng.hpp"
#include "cascade/simulate.hpp"
#include "cascade/stationary.hpp"

namespace py = pybind11;
using namespace cascade;

namespace {

BoundaryCondition bc_from_string(const std::string& name) {
    if (name == "dirichlet") return BoundaryCondition::Dirichlet;
    if (name == "periodic") return BoundaryCondition::Periodic;
    throw std::invalid_argument("bc must be \"dirichlet\" or \"periodic\"");
}

CompactonForm form_from_string(const std::string& name) {
    if (name == "cosine") return CompactonForm::Cosine;
    if (name == "sine") return CompactonForm::Sine;
    throw std::invalid_argument("form must be \"cosine\" or \"sine\"");
}

IcKind kind_from_string(const std::string& name) {
    if (name == "localized") return IcKind::LocalizedRandomPhase;
    if (name == "weighted") return IcKind::WeightedRandomPhase;
    if (name == "shock") return IcKind::Shock;
    if (name == "weighted_shock") return IcKind::WeightedShock;
    if (name == "generalized_weighted_shock")
        return IcKind::GeneralizedWeightedShock;
    throw std::invalid_argument(
        "kind must be one of localized, weighted, shock, weighted_shock, "
        "generalized_weighted_shock");
}

State state_from_array(const py::array_t<std::complex<double>>& b,
                       const std::string& bc) {
    if (b.ndim() != 1) throw std::invalid_argument("state must be 1-d");
    State s;
    s.bc = bc_from_string(bc);
    const auto view = b.unchecked<1>();
    s.b.assign(view.data(0), view.data(0) + view.shape(0));
    return s;
}

py::array_t<std::complex<double>> array_from_state(const State& s) {
    py::array_t<std::complex<double>> out(
        static_cast<py::ssize_t>(s.size()));
    auto view = out.mutable_unchecked<1>();
    for (std::size_t j = 0; j < s.size(); ++j) {
        view(static_cast<py::ssize_t>(j)) = s.b[j];
    }
    return out;
}

py::array_t<double> array_from_vector(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    auto view = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < v.size(); ++i) {
        view(static_cast<py::ssize_t>(i)) = v[i];
    }
    return out;
}

std::vector<double> resolve_sample_times(
    const std::optional<std::vector<double>>& sample_times, double t0,
    double t1) {
    if (sample_times) return *sample_times;
    return {t0, t1};
}

IntegratorConfig make_integrator(double rel_tol, double abs_tol,
                                 double fixed_step, std::int64_t max_steps) {
    IntegratorConfig cfg;
    cfg.rel_tol = rel_tol;
    cfg.abs_tol = abs_tol;
    cfg.fixed_step = fixed_step;
    cfg.max_steps = max_steps;
    return cfg;
}

std::vector<NormKind> parse_norms(const std::vector<std::string>& tags) {
    std::vector<NormKind> norms;
    norms.reserve(tags.size());
    for (const std::string& tag : tags) norms.push_back(parse_norm_tag(tag));
    return norms;
}

py::array_t<std::complex<double>> py_make_ic(const std::string& kind, int n,
                                             double eps, int j_star,
                                             double sigma,
                                             const std::string& bc,
                                             std::uint64_t seed) {
    InitialConditionSpec spec;
    spec.kind = kind_from_string(kind);
    spec.n = n;
    spec.eps = eps;
    spec.j_star = j_star;
    spec.sigma = sigma;
    spec.bc = bc_from_string(bc);
    std::vector<double> phases;
    if (uses_random_phases(spec.kind)) {
        SplitMix64 rng(seed);  // same convention as the CLI seed option
        phases = uniform_phases(rng, n);
    }
    return array_from_state(make_ic(spec, phases));
}

py::dict py_simulate(const py::array_t<std::complex<double>>& b,
                     double t_final, double t0, const std::string& bc,
                     const std::optional<std::vector<double>>& sample_times,
                     double rel_tol, double abs_tol, double fixed_step,
                     std::int64_t max_steps) {
    const State initial = state_from_array(b, bc);
    const auto times = resolve_sample_times(sample_times, t0, t_final);
    const IntegratorConfig cfg =
        make_integrator(rel_tol, abs_tol, fixed_step, max_steps);
    Trajectory traj;
    {
        py::gil_scoped_release release;
        traj = simulate(initial, t0, t_final, times, cfg);
    }
    const InvariantDrift drift = invariant_drift(traj);

    const py::ssize_t rows = static_cast<py::ssize_t>(traj.states.size());
    const py::ssize_t cols = static_cast<py::ssize_t>(initial.size());
    py::array_t<std::complex<double>> states({rows, cols});
    auto view = states.mutable_unchecked<2>();
    for (py::ssize_t r = 0; r < rows; ++r) {
        for (py::ssize_t c = 0; c < cols; ++c) {
            view(r, c) = traj.states[static_cast<std::size_t>(r)]
                             .b[static_cast<std::size_t>(c)];
        }
    }

    py::dict out;
    out["times"] = array_from_vector(traj.times);
    out["states"] = states;
    out["initial_mass"] = traj.initial_mass;
    out["initial_hamiltonian"] = traj.initial_hamiltonian;
    out["max_abs_mass_drift"] = drift.max_abs_mass;
    out["max_rel_mass_drift"] = drift.max_rel_mass;
    out["max_abs_hamiltonian_drift"] = drift.max_abs_hamiltonian;
    out["max_rel_hamiltonian_drift"] = drift.max_rel_hamiltonian;
    out["accepted_steps"] = traj.stats.accepted;
    out["rejected_steps"] = traj.stats.rejected;
    return out;
}

py::dict py_run_ensemble(const std::string& kind, int n, double eps,
                         int j_star, double sigma, const std::string& bc,
                         int realizations, double t_final,
                         const std::optional<std::vector<double>>& sample_times,
                         const std::vector<std::string>& norms,
                         std::uint64_t master_seed, double drift_tolerance,
                         int threads, double rel_tol, double abs_tol,
                         std::int64_t max_steps) {
    EnsembleConfig cfg;
    cfg.ic.kind = kind_from_string(kind);
    cfg.ic.n = n;
    cfg.ic.eps = eps;
    cfg.ic.j_star = j_star;
    cfg.ic.sigma = sigma;
    cfg.ic.bc = bc_from_string(bc);
    cfg.realizations = realizations;
    cfg.t_final = t_final;
    if (sample_times) cfg.sample_times = *sample_times;
    cfg.norms = parse_norms(norms);
    cfg.master_seed = master_seed;
    cfg.integrator = make_integrator(rel_tol, abs_tol, 0.0, max_steps);
    cfg.drift_tolerance = drift_tolerance;
    cfg.threads = threads;

    EnsembleStats stats;
    {
        py::gil_scoped_release release;
        stats = run_ensemble(cfg);
    }

    const py::ssize_t rows = static_cast<py::ssize_t>(stats.sample_times.size());
    const py::ssize_t cols = static_cast<py::ssize_t>(stats.norms.size());
    py::array_t<double> mean({rows, cols});
    py::array_t<double> stddev({rows, cols});
    py::array_t<double> ci_lower({rows, cols});
    py::array_t<double> ci_upper({rows, cols});
    auto m = mean.mutable_unchecked<2>();
    auto s = stddev.mutable_unchecked<2>();
    auto lo = ci_lower.mutable_unchecked<2>();
    auto hi = ci_upper.mutable_unchecked<2>();
    for (py::ssize_t r = 0; r < rows; ++r) {
        for (py::ssize_t c = 0; c < cols; ++c) {
            const CiResult& cell = stats.stats[static_cast<std::size_t>(r)]
                                              [static_cast<std::size_t>(c)];
            m(r, c) = cell.mean;
            s(r, c) = cell.stddev;
            lo(r, c) = cell.ci_lower;
            hi(r, c) = cell.ci_upper;
        }
    }

    py::list failures;
    for (const RealizationFailure& f : stats.failures) {
        py::dict item;
        item["index"] = f.index;
        item["seed"] = f.seed;
        item["reason"] = f.reason;
        failures.append(item);
    }

    std::vector<std::string> tags;
    tags.reserve(stats.norms.size());
    for (const NormKind& k : stats.norms) tags.push_back(norm_tag(k));

    py::dict out;
    out["sample_times"] = array_from_vector(stats.sample_times);
    out["norms"] = tags;
    out["mean"] = mean;
    out["std"] = stddev;
    out["ci_lower"] = ci_lower;
    out["ci_upper"] = ci_upper;
    out["realizations"] = stats.realizations;
    out["failures"] = failures;
    out["normalized"] = stats.normalized;
    out["max_rel_mass_drift"] = stats.max_rel_mass_drift;
    out["max_rel_hamiltonian_drift"] = stats.max_rel_hamiltonian_drift;
    return out;
}

py::dict py_solve_phase_locked(int n, double omega) {
    const PhaseLockedProfile prof = solve_phase_locked(n, omega);
    py::dict out;
    out["rho"] = array_from_vector(prof.rho);
    out["omega"] = prof.omega;
    out["strictly_positive"] = prof.strictly_positive;
    out["near_zero_entries"] = prof.near_zero_entries;
    out["residual_max"] = prof.residual_max;
    return out;
}

py::dict py_integrate_reduced(
    double dphi, double drho, double rho_bar, double phi_bar, double t_final,
    double t0, const std::optional<std::vector<double>>& sample_times,
    double rel_tol, double abs_tol, std::int64_t max_steps) {
    const ReducedState r0{dphi, drho, rho_bar, phi_bar};
    const auto times = resolve_sample_times(sample_times, t0, t_final);
    const IntegratorConfig cfg = make_integrator(rel_tol, abs_tol, 0.0,
                                                 max_steps);
    RealTrajectory traj;
    {
        py::gil_scoped_release release;
        traj = integrate_reduced(r0, t0, t_final, times, cfg);
    }
    const py::ssize_t rows = static_cast<py::ssize_t>(traj.states.size());
    py::array_t<double> vars({rows, static_cast<py::ssize_t>(4)});
    auto view = vars.mutable_unchecked<2>();
    for (py::ssize_t r = 0; r < rows; ++r) {
        for (py::ssize_t c = 0; c < 4; ++c) {
            view(r, c) = traj.states[static_cast<std::size_t>(r)]
                                    [static_cast<std::size_t>(c)];
        }
    }
    py::dict out;
    out["times"] = array_from_vector(traj.times);
    out["states"] = vars;  // columns dphi, drho, rho_bar, phi_bar
    return out;
}

py::dict py_compacton_fd_residual(double h, double dx,
                                  const std::string& form) {
    CompactonParams p;
    p.h = h;
    p.form = form_from_string(form);
    const ResidualReport r = compacton_fd_residual(p, dx);
    py::dict out;
    out["max_interior"] = r.max_interior;
    out["max_edge"] = r.max_edge;
    out["dx"] = r.dx;
    out["interior_points"] = r.interior_points;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hamiltonian lattice cascade toolkit";

    m.def("make_ic", &py_make_ic, py::arg("kind"), py::arg("n"),
          py::kw_only(), py::arg("eps") = 0.1, py::arg("j_star") = 1,
          py::arg("sigma") = 1.0, py::arg("bc") = "dirichlet",
          py::arg("seed") = 1,
          "Initial lattice state for a named family; random-phase kinds "
          "derive their phases from the seed.");

    m.def(
        "mass",
        [](const py::array_t<std::complex<double>>& b) {
            return mass(state_from_array(b, "dirichlet"));
        },
        py::arg("b"), "Total density sum |b_j|^2.");

    m.def(
        "hamiltonian",
        [](const py::array_t<std::complex<double>>& b, const std::string& bc) {
            return hamiltonian(state_from_array(b, bc));
        },
        py::arg("b"), py::arg("bc") = "dirichlet");

    m.def(
        "lattice_norm",
        [](const py::array_t<std::complex<double>>& b,
           const std::string& norm) {
            return lattice_norm(state_from_array(b, "dirichlet"),
                                parse_norm_tag(norm));
        },
        py::arg("b"), py::arg("norm") = "poly_2",
        "Weighted norm named by tag, e.g. \"poly_2\" or \"dyadic_1.5\".");

    m.def(
        "rhs",
        [](const py::array_t<std::complex<double>>& b, const std::string& bc) {
            const State s = state_from_array(b, bc);
            const auto d = rhs_cartesian(s);
            State out;
            out.b = d;
            return array_from_state(out);
        },
        py::arg("b"), py::arg("bc") = "dirichlet",
        "Time derivative of the lattice state.");

    m.def("simulate", &py_simulate, py::arg("b"), py::arg("t_final"),
          py::kw_only(), py::arg("t0") = 0.0, py::arg("bc") = "dirichlet",
          py::arg("sample_times") = std::nullopt,
          py::arg("rel_tol") = 1e-12, py::arg("abs_tol") = 1e-14,
          py::arg("fixed_step") = 0.0, py::arg("max_steps") = std::int64_t{200'000'000},
          "Integrate the lattice flow; returns times, sampled states, and "
          "invariant drift.");

    m.def("run_ensemble", &py_run_ensemble, py::arg("kind"), py::arg("n"),
          py::kw_only(), py::arg("eps") = 0.1, py::arg("j_star") = 1,
          py::arg("sigma") = 1.0, py::arg("bc") = "dirichlet",
          py::arg("realizations") = 100, py::arg("t_final") = 100.0,
          py::arg("sample_times") = std::nullopt,
          py::arg("norms") = std::vector<std::string>{"poly_2"},
          py::arg("master_seed") = 1, py::arg("drift_tolerance") = 1e-9,
          py::arg("threads") = 0, py::arg("rel_tol") = 1e-12,
          py::arg("abs_tol") = 1e-14, py::arg("max_steps") = std::int64_t{200'000'000},
          "Normalized norm statistics over seeded random realizations.");

    m.def("solve_phase_locked", &py_solve_phase_locked, py::arg("n"),
          py::arg("omega") = 1.0,
          "Density profile of the uniformly rotating state.");

    m.def(
        "scan_positive",
        [](int n_max, double omega) { return scan_positive(n_max, omega); },
        py::arg("n_max"), py::arg("omega") = 1.0,
        "Lattice sizes up to n_max whose profile is strictly positive.");

    m.def(
        "coupling_determinant",
        [](int n) {
            std::ostringstream ss;
            ss << coupling_determinant(n);
            return py::int_(py::str(ss.str()));
        },
        py::arg("n"), "Exact determinant of the coupling matrix.");

    m.def(
        "reduced_hamiltonian",
        [](double dphi, double drho, double rho_bar, double phi_bar) {
            return reduced_hamiltonian({dphi, drho, rho_bar, phi_bar});
        },
        py::arg("dphi"), py::arg("drho"), py::arg("rho_bar"),
        py::arg("phi_bar") = 0.0);

    m.def("integrate_reduced", &py_integrate_reduced, py::arg("dphi"),
          py::arg("drho"), py::arg("rho_bar"), py::arg("phi_bar"),
          py::arg("t_final"), py::kw_only(), py::arg("t0") = 0.0,
          py::arg("sample_times") = std::nullopt, py::arg("rel_tol") = 1e-12,
          py::arg("abs_tol") = 1e-14, py::arg("max_steps") = std::int64_t{200'000'000},
          "Integrate the two-site reduced system.");

    m.def(
        "find_return_time",
        [](double dphi, double drho, double rho_bar, double phi_bar,
           double t_max, double match_tol) {
            py::gil_scoped_release release;
            return find_return_time({dphi, drho, rho_bar, phi_bar}, t_max, {},
                                    match_tol);
        },
        py::arg("dphi"), py::arg("drho"), py::arg("rho_bar"),
        py::arg("phi_bar"), py::kw_only(), py::arg("t_max") = 100.0,
        py::arg("match_tol") = 1e-6,
        "First return time of the reduced orbit.");

    m.def(
        "to_hydro",
        [](const py::array_t<std::complex<double>>& b, const std::string& bc) {
            const HydroState hs = to_hydro(state_from_array(b, bc));
            return py::make_tuple(array_from_vector(hs.rho),
                                  array_from_vector(hs.phi));
        },
        py::arg("b"), py::arg("bc") = "dirichlet",
        "Densities and phases (rho, phi) of a lattice state.");

    m.def(
        "from_hydro",
        [](const std::vector<double>& rho, const std::vector<double>& phi,
           const std::string& bc) {
            HydroState hs;
            hs.rho = rho;
            hs.phi = phi;
            hs.bc = bc_from_string(bc);
            return array_from_state(from_hydro(hs));
        },
        py::arg("rho"), py::arg("phi"), py::arg("bc") = "dirichlet");

    m.def(
        "compacton_profile",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>&
               x,
           double h, const std::string& form) -> py::object {
            CompactonParams p;
            p.h = h;
            p.form = form_from_string(form);
            validate(p);
            if (x.ndim() == 0) {
                return py::float_(compacton_profile(p, *x.data()));
            }
            if (x.ndim() != 1) {
                throw std::invalid_argument("x must be a scalar or 1-d");
            }
            py::array_t<double> out(x.shape(0));
            const auto in = x.unchecked<1>();
            auto view = out.mutable_unchecked<1>();
            for (py::ssize_t i = 0; i < in.shape(0); ++i) {
                view(i) = compacton_profile(p, in(i));
            }
            return out;
        },
        py::arg("x"), py::arg("h") = 1.0, py::arg("form") = "cosine",
        "Closed-form compactly supported profile sampled at x; scalar in, "
        "scalar out.");

    m.def(
        "support_half_width",
        [](double h) {
            CompactonParams p;
            p.h = h;
            return support_half_width(p);
        },
        py::arg("h") = 1.0,
        "Half-width of the profile support for spacing h.");

    m.def(
        "compacton_residuals",
        [](double h, const std::string& form, int samples) {
            CompactonParams p;
            p.h = h;
            p.form = form_from_string(form);
            py::dict out;
            out["u_equation"] = max_u_equation_residual(p, samples);
            out["first_integral"] = max_first_integral_residual(p, samples);
            return out;
        },
        py::arg("h") = 1.0, py::arg("form") = "cosine",
        py::arg("samples") = 2001,
        "Maximum analytic residuals over the open support.");

    m.def("compacton_fd_residual", &py_compacton_fd_residual, py::arg("h"),
          py::arg("dx"), py::arg("form") = "cosine",
          "Centered-difference residual split into interior and edge maxima.");

    m.def(
        "lattice_ic_from_profile",
        [](double h, int n, int center, const std::string& form) {
            CompactonParams p;
            p.h = h;
            p.form = form_from_string(form);
            return array_from_state(lattice_ic_from_profile(p, n, center));
        },
        py::arg("h"), py::arg("n"), py::arg("center"),
        py::arg("form") = "cosine",
        "Profile sampled onto lattice sites around the given center.");
}
