#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "cascade/compacton.hpp"
#include "cascade/model.hpp"

using namespace cascade;

namespace {

CompactonParams params(double h, CompactonForm form = CompactonForm::Cosine) {
    CompactonParams p;
    p.h = h;
    p.form = form;
    return p;
}

}  // namespace

TEST_CASE("compacton parameter validation") {
    CHECK_NOTHROW(validate(params(1.0)));
    CHECK_NOTHROW(validate(params(0.01, CompactonForm::Sine)));
    CHECK_THROWS_AS(validate(params(0.0)), std::invalid_argument);
    CHECK_THROWS_AS(validate(params(-2.0)), std::invalid_argument);
    CompactonParams inf = params(1.0);
    inf.h = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate(inf), std::invalid_argument);
    CompactonParams level = params(1.0);
    level.c = 0.1;
    CHECK_THROWS_AS(validate(level), std::invalid_argument);
}

TEST_CASE("support width scales linearly in h") {
    const double w1 = support_half_width(params(1.0));
    CHECK(w1 == doctest::Approx(std::numbers::pi * std::sqrt(2.0 / 3.0)).epsilon(1e-15));
    CHECK(support_half_width(params(2.5)) == doctest::Approx(2.5 * w1).epsilon(1e-15));
}

TEST_CASE("cosine profile values") {
    const CompactonParams p = params(1.0);
    const double w = support_half_width(p);

    CHECK(compacton_profile(p, 0.0) == std::sqrt(2.0 / 3.0));
    CHECK(compacton_profile(p, 0.0) == doctest::Approx(0.816497).epsilon(1e-6));
    CHECK(compacton_profile(p, 2.0 * w) == 0.0);
    CHECK(compacton_profile(p, w) == 0.0);
    CHECK(compacton_profile(p, -w) == 0.0);
    CHECK(compacton_profile(p, -3.0 * w) == 0.0);

    const double k = 0.5 * std::sqrt(1.5);
    CHECK(std::abs(compacton_profile(p, 0.5) -
                   std::sqrt(2.0 / 3.0) * std::cos(0.5 * k)) <= 1e-15);
    // Even in x.
    CHECK(compacton_profile(p, 1.3) == compacton_profile(p, -1.3));
}

TEST_CASE("profile rescales with h") {
    const CompactonParams coarse = params(2.0);
    const CompactonParams unit = params(1.0);
    for (double x : {0.1, 0.5, 1.0, 2.0, 3.0}) {
        CHECK(std::abs(compacton_profile(coarse, x) -
                       compacton_profile(unit, x / 2.0)) <= 1e-15);
    }
}

TEST_CASE("sine form is the cosine bump shifted onto (0, 2w)") {
    const CompactonParams p = params(1.0, CompactonForm::Sine);
    const double w = support_half_width(p);

    CHECK(compacton_profile(p, 0.0) == 0.0);
    CHECK(compacton_profile(p, 2.0 * w) == 0.0);
    CHECK(compacton_profile(p, -0.5) == 0.0);
    CHECK(std::abs(compacton_profile(p, w) - std::sqrt(2.0 / 3.0)) <= 1e-15);

    const CompactonParams cosine = params(1.0);
    for (double x : {0.3, 1.0, 2.0, 3.5, 4.9}) {
        CHECK(std::abs(compacton_profile(p, x) -
                       compacton_profile(cosine, x - w)) <= 1e-14);
    }
}

TEST_CASE("analytic residual vanishes to machine precision") {
    for (CompactonForm form : {CompactonForm::Cosine, CompactonForm::Sine}) {
        for (double h : {0.5, 1.0, 3.0}) {
            const CompactonParams p = params(h, form);
            const double w = support_half_width(p);
            const double lo = form == CompactonForm::Cosine ? -w : 0.0;
            double worst = 0.0;
            for (int i = 0; i <= 400; ++i) {
                const double x = lo + 2.0 * w * static_cast<double>(i) / 400.0;
                worst = std::max(worst, std::abs(compacton_ode_residual_analytic(p, x)));
            }
            CHECK(worst <= 1e-12);
        }
    }
    // Identically zero where the profile is zero.
    const CompactonParams p = params(1.0);
    const double w = support_half_width(p);
    CHECK(compacton_ode_residual_analytic(p, 2.0 * w) == 0.0);
    CHECK(compacton_ode_residual_analytic(p, -1.5 * w) == 0.0);
}

TEST_CASE("u-equation and first integral hold on the support") {
    for (CompactonForm form : {CompactonForm::Cosine, CompactonForm::Sine}) {
        for (double h : {0.37, 1.0}) {
            const CompactonParams p = params(h, form);
            CHECK(max_u_equation_residual(p, 1000) <= 1e-12);
            CHECK(max_first_integral_residual(p, 1000) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(max_u_equation_residual(params(1.0), 0), std::domain_error);
    CHECK_THROWS_AS(max_first_integral_residual(params(1.0), -3), std::domain_error);
}

TEST_CASE("profile range stays within the compacton bounds") {
    const CompactonParams p = params(1.0);
    const double w = support_half_width(p);
    const double qmax = std::sqrt(2.0 / 3.0);
    for (int i = -220; i <= 220; ++i) {
        const double x = 1.5 * w * static_cast<double>(i) / 220.0;
        const double q = compacton_profile(p, x);
        CHECK(q >= 0.0);
        CHECK(q * q <= 2.0 / 3.0 + 1e-15);
        CHECK(q <= qmax);
    }
    // The maximum sits at the center.
    CHECK(compacton_profile(p, 0.0) == qmax);
}

TEST_CASE("finite-difference residual is second order in dx") {
    const CompactonParams p = params(1.0);
    const double w = support_half_width(p);

    const ResidualReport coarse = compacton_fd_residual(p, 2.0 * w / 128.0);
    const ResidualReport fine = compacton_fd_residual(p, 2.0 * w / 256.0);
    CHECK(coarse.interior_points >= 32);
    CHECK(fine.interior_points > coarse.interior_points);
    CHECK(coarse.max_interior > 0.0);
    const double ratio = coarse.max_interior / fine.max_interior;
    CHECK(ratio >= 3.2);
    CHECK(ratio <= 4.8);
}

TEST_CASE("edge residual stays bounded relative to the interior") {
    for (double h : {1.0, 0.25}) {
        const CompactonParams p = params(h);
        const double w = support_half_width(p);
        for (int cells : {64, 256, 1024}) {
            const ResidualReport r = compacton_fd_residual(p, 2.0 * w / cells);
            CHECK(r.max_edge <= 10.0 * r.max_interior);
        }
    }
}

TEST_CASE("degenerate grids are rejected") {
    const CompactonParams p = params(1.0);
    const double w = support_half_width(p);
    CHECK_THROWS_AS(compacton_fd_residual(p, 2.0 * w / 10.0), std::domain_error);
    CHECK_THROWS_AS(compacton_fd_residual(p, 0.0), std::domain_error);
    CHECK_THROWS_AS(compacton_fd_residual(p, -0.1), std::domain_error);
    CHECK_NOTHROW(compacton_fd_residual(p, 2.0 * w / 33.0));
}

TEST_CASE("lattice sampling hits exactly the reachable sites") {
    for (double h : {1.0, 0.1}) {
        const State state = lattice_ic_from_profile(params(h), 100, 50);
        REQUIRE(state.b.size() == 100);
        CHECK(state.bc == BoundaryCondition::Dirichlet);
        for (int j = 1; j <= 100; ++j) {
            const Complex b = state.b[static_cast<std::size_t>(j - 1)];
            CHECK(b.imag() == 0.0);
            if (j >= 48 && j <= 52) {
                CHECK(b.real() > 0.0);
            } else {
                CHECK(b.real() == 0.0);
            }
        }
        CHECK(state.b[49].real() == std::sqrt(2.0 / 3.0));
    }

    // The site values do not depend on h because x_j = h(j - center).
    const State a = lattice_ic_from_profile(params(1.0), 100, 50);
    const State b = lattice_ic_from_profile(params(0.1), 100, 50);
    for (std::size_t i = 0; i < a.b.size(); ++i) {
        CHECK(std::abs(a.b[i].real() - b.b[i].real()) <= 1e-15);
    }
}

TEST_CASE("placement errors when the support leaves the lattice") {
    CHECK_THROWS_AS(lattice_ic_from_profile(params(1.0), 100, 2), std::invalid_argument);
    CHECK_THROWS_AS(lattice_ic_from_profile(params(1.0), 100, 99), std::invalid_argument);
    CHECK_NOTHROW(lattice_ic_from_profile(params(1.0), 5, 3));
    CHECK_THROWS_AS(lattice_ic_from_profile(params(1.0), 4, 2), std::invalid_argument);

    // The sine bump sits on (0, 2w): five sites to the right of center.
    const CompactonParams sine = params(1.0, CompactonForm::Sine);
    const State s = lattice_ic_from_profile(sine, 100, 94);
    CHECK(s.b[93].real() == 0.0);   // center itself is a support endpoint
    CHECK(s.b[94].real() > 0.0);
    CHECK(s.b[98].real() > 0.0);
    CHECK(s.b[99].real() == 0.0);
    CHECK_THROWS_AS(lattice_ic_from_profile(sine, 100, 96), std::invalid_argument);
}
