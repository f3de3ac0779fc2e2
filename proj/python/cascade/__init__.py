"""Hamiltonian lattice cascade toolkit.

Thin wrapper over the compiled core. All operations accept and return
numpy arrays; enum-like options are the same strings the CLI accepts
("dirichlet"/"periodic", "cosine"/"sine", norm tags like "poly_2").
"""

from cascade._core import (
    compacton_fd_residual,
    compacton_profile,
    compacton_residuals,
    coupling_determinant,
    find_return_time,
    from_hydro,
    hamiltonian,
    integrate_reduced,
    lattice_ic_from_profile,
    lattice_norm,
    make_ic,
    mass,
    reduced_hamiltonian,
    rhs,
    run_ensemble,
    scan_positive,
    simulate,
    solve_phase_locked,
    support_half_width,
    to_hydro,
)

__all__ = [
    "compacton_fd_residual",
    "compacton_profile",
    "compacton_residuals",
    "coupling_determinant",
    "find_return_time",
    "from_hydro",
    "hamiltonian",
    "integrate_reduced",
    "lattice_ic_from_profile",
    "lattice_norm",
    "make_ic",
    "mass",
    "reduced_hamiltonian",
    "rhs",
    "run_ensemble",
    "scan_positive",
    "simulate",
    "solve_phase_locked",
    "support_half_width",
    "to_hydro",
]

__version__ = "0.1.0"
