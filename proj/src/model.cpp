#include "cascade/model.hpp"

#include <cmath>
#include <stdexcept>

namespace cascade {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Neighbor index under the ghost convention; returns -1 for a Dirichlet
// ghost (value zero).
int neighbor(int j, int offset, int n, BoundaryCondition bc) {
    int k = j + offset;
    if (k >= 0 && k < n) return k;
    if (bc == BoundaryCondition::Dirichlet) return -1;
    return (k + n) % n;
}

}  // namespace

void validate(const State& state) {
    if (state.b.empty()) throw std::invalid_argument("state is empty");
    for (Complex z : state.b) {
        if (!finite(z)) throw std::invalid_argument("state has non-finite entry");
    }
}

void validate(const HydroState& hstate) {
    if (hstate.rho.empty()) throw std::invalid_argument("state is empty");
    if (hstate.rho.size() != hstate.phi.size()) {
        throw std::invalid_argument("rho/phi size mismatch");
    }
    for (std::size_t j = 0; j < hstate.rho.size(); ++j) {
        if (!std::isfinite(hstate.rho[j]) || !std::isfinite(hstate.phi[j])) {
            throw std::invalid_argument("state has non-finite entry");
        }
        if (hstate.rho[j] < 0.0) {
            throw std::invalid_argument("negative density");
        }
    }
}

void rhs_cartesian_packed(const double* y, double* dydt, std::size_t n,
                          BoundaryCondition bc) {
    const int nn = static_cast<int>(n);
    for (int j = 0; j < nn; ++j) {
        const double x = y[2 * j];
        const double yi = y[2 * j + 1];

        // w = b_{j-1}^2 + b_{j+1}^2 with ghosts resolved.
        double wr = 0.0;
        double wi = 0.0;
        for (int off : {-1, 1}) {
            int k = neighbor(j, off, nn, bc);
            if (k < 0) continue;
            const double p = y[2 * k];
            const double q = y[2 * k + 1];
            wr += p * p - q * q;
            wi += 2.0 * p * q;
        }

        // i * (-|b|^2 b + 2 w conj(b))
        const double m = x * x + yi * yi;
        const double u = -m * x + 2.0 * (wr * x + wi * yi);
        const double v = -m * yi + 2.0 * (wi * x - wr * yi);
        dydt[2 * j] = -v;
        dydt[2 * j + 1] = u;
    }
}

std::vector<Complex> rhs_cartesian(const State& state) {
    validate(state);
    const std::size_t n = state.size();
    std::vector<double> packed(2 * n);
    std::vector<double> out(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        packed[2 * j] = state.b[j].real();
        packed[2 * j + 1] = state.b[j].imag();
    }
    rhs_cartesian_packed(packed.data(), out.data(), n, state.bc);
    std::vector<Complex> dbdt(n);
    for (std::size_t j = 0; j < n; ++j) {
        dbdt[j] = Complex(out[2 * j], out[2 * j + 1]);
    }
    return dbdt;
}

std::pair<std::vector<double>, std::vector<double>> rhs_hydro(
    const HydroState& hstate) {
    validate(hstate);
    const int n = static_cast<int>(hstate.size());
    std::vector<double> dphi(n, 0.0);
    std::vector<double> drho(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double dp = -hstate.rho[j];
        double dr = 0.0;
        for (int off : {-1, 1}) {
            int k = neighbor(j, off, n, hstate.bc);
            if (k < 0) continue;
            const double a = 2.0 * (hstate.phi[k] - hstate.phi[j]);
            dp += 2.0 * hstate.rho[k] * std::cos(a);
            dr -= 4.0 * hstate.rho[j] * hstate.rho[k] * std::sin(a);
        }
        dphi[j] = dp;
        drho[j] = dr;
    }
    return {std::move(dphi), std::move(drho)};
}

std::vector<double> rhs_discrete_burgers(const std::vector<double>& rho,
                                         BoundaryCondition bc) {
    if (rho.empty()) throw std::invalid_argument("state is empty");
    const int n = static_cast<int>(rho.size());
    std::vector<double> drho(n, 0.0);
    for (int j = 0; j < n; ++j) {
        if (!std::isfinite(rho[j])) {
            throw std::invalid_argument("state has non-finite entry");
        }
        const int l = neighbor(j, -1, n, bc);
        const int r = neighbor(j, 1, n, bc);
        const double left = l < 0 ? 0.0 : rho[l];
        const double right = r < 0 ? 0.0 : rho[r];
        drho[j] = -4.0 * rho[j] * left + 4.0 * rho[j] * right;
    }
    return drho;
}

double mass(const State& state) {
    validate(state);
    double m = 0.0;
    for (Complex z : state.b) m += std::norm(z);
    return m;
}

double hamiltonian(const State& state) {
    validate(state);
    const int n = static_cast<int>(state.size());
    double h = 0.0;
    for (int j = 0; j < n; ++j) {
        const Complex bj = state.b[j];
        h += 0.25 * std::norm(bj) * std::norm(bj);
        const int l = neighbor(j, -1, n, state.bc);
        if (l < 0) continue;
        const Complex c = std::conj(bj) * std::conj(bj) * state.b[l] * state.b[l];
        h -= c.real();
    }
    return h;
}

double lattice_norm(const State& state, const NormKind& norm) {
    validate(state);
    double sum = 0.0;
    for (std::size_t idx = 0; idx < state.size(); ++idx) {
        const double j = static_cast<double>(idx + 1);
        const double w = norm.family == NormFamily::PolynomialSobolev
                             ? std::pow(j, 2.0 * norm.s)
                             : std::exp2((norm.s - 1.0) * j);
        sum += w * std::norm(state.b[idx]);
    }
    return std::sqrt(sum);
}

HydroState to_hydro(const State& state) {
    validate(state);
    HydroState h;
    h.bc = state.bc;
    h.rho.resize(state.size());
    h.phi.resize(state.size());
    for (std::size_t j = 0; j < state.size(); ++j) {
        h.rho[j] = std::norm(state.b[j]);
        h.phi[j] = state.b[j] == Complex(0.0, 0.0) ? 0.0 : std::arg(state.b[j]);
    }
    return h;
}

State from_hydro(const HydroState& hstate) {
    for (double r : hstate.rho) {
        if (r < 0.0) throw std::domain_error("negative density");
    }
    validate(hstate);
    State s;
    s.bc = hstate.bc;
    s.b.resize(hstate.size());
    for (std::size_t j = 0; j < hstate.size(); ++j) {
        const double r = std::sqrt(hstate.rho[j]);
        s.b[j] = Complex(r * std::cos(hstate.phi[j]), r * std::sin(hstate.phi[j]));
    }
    return s;
}

}  // namespace cascade
