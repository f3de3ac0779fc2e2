#include "cascade/compacton.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cascade {

namespace {

constexpr double kTwoThirds = 2.0 / 3.0;

double wavenumber(const CompactonParams& p) {
    return 0.5 * std::sqrt(1.5) / p.h;
}

// Support interval (lo, hi) in x. The cosine bump is centered at the
// origin, the sine variant is the same bump shifted to start at zero.
std::pair<double, double> support_interval(const CompactonParams& p) {
    const double w = support_half_width(p);
    if (p.form == CompactonForm::Cosine) return {-w, w};
    return {0.0, 2.0 * w};
}

bool inside_support(const CompactonParams& p, double x) {
    const auto [lo, hi] = support_interval(p);
    return x > lo && x < hi;
}

}  // namespace

void validate(const CompactonParams& p) {
    if (!(p.h > 0.0) || !std::isfinite(p.h)) {
        throw std::invalid_argument("h must be positive and finite");
    }
    if (p.c != 0.0) {
        throw std::invalid_argument(
            "only the c = 0 profile has a closed form");
    }
}

double support_half_width(const CompactonParams& p) {
    validate(p);
    return p.h * std::numbers::pi * std::sqrt(kTwoThirds);
}

double compacton_profile(const CompactonParams& p, double x) {
    validate(p);
    if (!inside_support(p, x)) return 0.0;
    const double k = wavenumber(p);
    if (p.form == CompactonForm::Cosine) {
        return std::sqrt(kTwoThirds) * std::cos(k * x);
    }
    return std::sqrt(kTwoThirds) * std::sin(k * x);
}

double compacton_u_second_derivative(const CompactonParams& p, double x) {
    validate(p);
    if (!inside_support(p, x)) return 0.0;
    const double k = wavenumber(p);
    // U = Q^2 = (1 +/- cos(2kx))/3, so U'' = -/+ (4/3) k^2 cos(2kx).
    const double c2 = std::cos(2.0 * k * x);
    const double mag = (4.0 / 3.0) * k * k * c2;
    return p.form == CompactonForm::Cosine ? -mag : mag;
}

double compacton_ode_residual_analytic(const CompactonParams& p, double x) {
    const double q = compacton_profile(p, x);
    const double upp = compacton_u_second_derivative(p, x);
    return q - 3.0 * q * q * q - 2.0 * p.h * p.h * q * upp;
}

ResidualReport compacton_fd_residual(const CompactonParams& p, double dx) {
    validate(p);
    if (!(dx > 0.0) || !std::isfinite(dx)) {
        throw std::domain_error("grid spacing must be positive and finite");
    }
    const auto [lo, hi] = support_interval(p);
    const double width = hi - lo;
    const auto cells = static_cast<long>(std::llround(width / dx));
    if (cells < 33) {
        throw std::domain_error("grid too coarse: need at least 32 interior points");
    }

    ResidualReport report;
    report.dx = width / static_cast<double>(cells);
    report.interior_points = static_cast<int>(cells - 1);

    // Node values, with the support endpoints on the grid so the stencil
    // never straddles the kink.
    std::vector<double> u(static_cast<std::size_t>(cells) + 1);
    for (long i = 0; i <= cells; ++i) {
        const double x = lo + static_cast<double>(i) * report.dx;
        const double q = compacton_profile(p, x);
        u[static_cast<std::size_t>(i)] = q * q;
    }

    const double inv_dx2 = 1.0 / (report.dx * report.dx);
    for (long i = 1; i < cells; ++i) {
        const double x = lo + static_cast<double>(i) * report.dx;
        const double q = compacton_profile(p, x);
        const auto idx = static_cast<std::size_t>(i);
        const double upp = (u[idx - 1] - 2.0 * u[idx] + u[idx + 1]) * inv_dx2;
        const double r = std::abs(q - 3.0 * q * q * q - 2.0 * p.h * p.h * q * upp);
        if (i == 1 || i == cells - 1) {
            report.max_edge = std::max(report.max_edge, r);
        } else {
            report.max_interior = std::max(report.max_interior, r);
        }
    }
    return report;
}

double max_u_equation_residual(const CompactonParams& p, int samples) {
    validate(p);
    if (samples < 1) throw std::domain_error("need at least one sample");
    const auto [lo, hi] = support_interval(p);
    const double step = (hi - lo) / static_cast<double>(samples + 1);
    double worst = 0.0;
    for (int i = 1; i <= samples; ++i) {
        const double x = lo + static_cast<double>(i) * step;
        const double q = compacton_profile(p, x);
        const double u = q * q;
        const double upp = compacton_u_second_derivative(p, x);
        worst = std::max(worst, std::abs(2.0 * p.h * p.h * upp + 3.0 * u - 1.0));
    }
    return worst;
}

double max_first_integral_residual(const CompactonParams& p, int samples) {
    validate(p);
    if (samples < 1) throw std::domain_error("need at least one sample");
    const auto [lo, hi] = support_interval(p);
    const double k = wavenumber(p);
    const double step = (hi - lo) / static_cast<double>(samples + 1);
    double worst = 0.0;
    for (int i = 1; i <= samples; ++i) {
        const double x = lo + static_cast<double>(i) * step;
        const double q = compacton_profile(p, x);
        const double u = q * q;
        // U' = -/+ (2/3) k sin(2kx) inside the support.
        const double s2 = std::sin(2.0 * k * x);
        const double up = (p.form == CompactonForm::Cosine ? -1.0 : 1.0) *
                          kTwoThirds * k * s2;
        const double f = p.h * p.h * up * up + 1.5 * u * u - u;
        worst = std::max(worst, std::abs(f));
    }
    return worst;
}

State lattice_ic_from_profile(const CompactonParams& p, int n, int center) {
    validate(p);
    if (n < 1) throw std::invalid_argument("lattice needs at least one site");
    const auto [lo, hi] = support_interval(p);
    // Site offsets the support reaches: lo < h*(j - center) < hi. The h
    // cancels, so the reach in sites is the same for every h.
    const auto o_min = static_cast<long>(std::floor(lo / p.h)) + 1;
    const auto o_max = static_cast<long>(std::ceil(hi / p.h)) - 1;
    if (center + o_min < 1 || center + o_max > n) {
        throw std::invalid_argument("profile support does not fit on the lattice");
    }

    State state;
    state.b.assign(static_cast<std::size_t>(n), Complex(0.0, 0.0));
    state.bc = BoundaryCondition::Dirichlet;
    for (long o = o_min; o <= o_max; ++o) {
        const long j = center + o;
        const double x = p.h * static_cast<double>(o);
        state.b[static_cast<std::size_t>(j - 1)] =
            Complex(compacton_profile(p, x), 0.0);
    }
    return state;
}

}  // namespace cascade
