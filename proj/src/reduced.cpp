#include "cascade/reduced.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cascade {

namespace {

// The equations are total; validation lives on the public entry points so
// integration stages never trip on transient extrapolations.
std::array<double, 4> rhs_raw(const std::array<double, 4>& v) {
    const double dphi = v[0];
    const double drho = v[1];
    const double rho_bar = v[2];
    const double c = std::cos(2.0 * dphi);
    return {
        -drho * (1.0 + 4.0 * c),
        4.0 * (rho_bar * rho_bar - drho * drho) * std::sin(2.0 * dphi),
        0.0,
        -rho_bar + 4.0 * rho_bar * c,
    };
}

std::array<double, 4> pack(const ReducedState& r) {
    return {r.dphi, r.drho, r.rho_bar, r.phi_bar};
}

ReducedState unpack(std::span<const double> v) {
    ReducedState r;
    r.dphi = v[0];
    r.drho = v[1];
    r.rho_bar = v[2];
    r.phi_bar = v[3];
    return r;
}

}  // namespace

void validate(const ReducedState& r) {
    for (double v : {r.dphi, r.drho, r.rho_bar, r.phi_bar}) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("non-finite reduced state");
        }
    }
    if (r.rho_bar < 0.0) {
        throw std::invalid_argument("pair density sum must be nonnegative");
    }
    if (std::abs(r.drho) > r.rho_bar) {
        throw std::domain_error("|drho| exceeds rho_bar");
    }
}

std::array<double, 4> reduced_rhs(const ReducedState& r) {
    validate(r);
    return rhs_raw(pack(r));
}

double reduced_hamiltonian(const ReducedState& r) {
    validate(r);
    return 0.5 * (1.0 + 4.0 * std::cos(2.0 * r.dphi)) *
           (r.rho_bar * r.rho_bar - r.drho * r.drho);
}

State lift_to_lattice(const ReducedState& r, int n) {
    validate(r);
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument(
            "period-2 pattern needs an even ring size");
    }
    HydroState h;
    h.bc = BoundaryCondition::Periodic;
    h.rho.resize(n);
    h.phi.resize(n);
    for (int j = 0; j < n; ++j) {
        const double sign = (j % 2 == 0) ? -1.0 : 1.0;  // 1-based odd sites
        h.rho[j] = 0.5 * (r.rho_bar + sign * r.drho);
        // Tiny negative values can appear when |drho| == rho_bar.
        if (h.rho[j] < 0.0) h.rho[j] = 0.0;
        h.phi[j] = 0.5 * (r.phi_bar + sign * r.dphi);
    }
    return from_hydro(h);
}

ReducedState extract_reduced(const State& state) {
    validate(state);
    if (state.size() < 2) {
        throw std::invalid_argument("need at least one adjacent pair");
    }
    const HydroState h = to_hydro(state);
    ReducedState r;
    r.dphi = h.phi[1] - h.phi[0];
    r.drho = h.rho[1] - h.rho[0];
    r.rho_bar = h.rho[1] + h.rho[0];
    r.phi_bar = h.phi[1] + h.phi[0];
    return r;
}

double angle_difference_mod_pi(double a, double b) {
    return std::remainder(a - b, std::numbers::pi);
}

RealTrajectory integrate_reduced(const ReducedState& r0, double t0, double t1,
                                 std::span<const double> sample_times,
                                 const IntegratorConfig& cfg) {
    validate(r0);
    const Rhs rhs = [](double, std::span<const double> y, std::span<double> d) {
        const auto out = rhs_raw({y[0], y[1], y[2], y[3]});
        for (int i = 0; i < 4; ++i) d[i] = out[i];
    };
    const auto y0 = pack(r0);
    return integrate(rhs, y0, t0, t1, sample_times, cfg);
}

double find_return_time(const ReducedState& r0, double t_max,
                        const IntegratorConfig& cfg, double match_tol) {
    validate(r0);
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");

    // Dense scan for sign changes of drho from - to +, the section where
    // dphi is increasing. Crossings closer together than the scan spacing
    // would be missed; the spacing is far below the orbital timescale for
    // the states this is used on.
    const int n_scan = 20000;
    std::vector<double> samples(n_scan);
    const double dt = t_max / n_scan;
    for (int i = 0; i < n_scan; ++i) samples[i] = dt * (i + 1);

    RealTrajectory scan = integrate_reduced(r0, 0.0, t_max, samples, cfg);

    auto reduced_at = [&](std::span<const double> y) { return unpack(y); };

    double prev_t = 0.0;
    std::array<double, 4> prev_y = pack(r0);
    for (std::size_t i = 0; i < scan.states.size(); ++i) {
        const double cur_t = scan.times[i];
        const auto& cur = scan.states[i];
        if (prev_y[1] < 0.0 && cur[1] >= 0.0) {
            // Bisect by re-integration from the bracket start; the system
            // is autonomous, so restarting at prev_y is exact.
            double lo = 0.0;
            double hi = cur_t - prev_t;
            std::array<double, 4> at_hi{cur[0], cur[1], cur[2], cur[3]};
            for (int it = 0; it < 80 && hi - lo > 1e-13 * std::max(1.0, prev_t);
                 ++it) {
                const double mid = 0.5 * (lo + hi);
                const std::vector<double> s{mid};
                auto seg = integrate(
                    [](double, std::span<const double> y, std::span<double> d) {
                        const auto out = rhs_raw({y[0], y[1], y[2], y[3]});
                        for (int k = 0; k < 4; ++k) d[k] = out[k];
                    },
                    prev_y, 0.0, mid, s, cfg);
                const auto& ym = seg.states.back();
                if (ym[1] >= 0.0) {
                    hi = mid;
                    at_hi = {ym[0], ym[1], ym[2], ym[3]};
                } else {
                    lo = mid;
                }
            }
            const ReducedState hit = reduced_at(at_hi);
            const double dp = angle_difference_mod_pi(hit.dphi, r0.dphi);
            const double dr = hit.drho - r0.drho;
            if (std::hypot(dp, dr) <= match_tol) return prev_t + hi;
        }
        prev_t = cur_t;
        prev_y = {cur[0], cur[1], cur[2], cur[3]};
    }
    throw std::runtime_error("no section return found before t_max");
}

}  // namespace cascade
