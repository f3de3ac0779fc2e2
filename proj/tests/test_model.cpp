#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "cascade/model.hpp"

using namespace cascade;

namespace {

State make_state(std::vector<Complex> b,
                 BoundaryCondition bc = BoundaryCondition::Dirichlet) {
    State s;
    s.b = std::move(b);
    s.bc = bc;
    return s;
}

// Deterministic state with O(1) entries; avoids distribution classes whose
// output is implementation-defined.
State random_state(int n, std::uint64_t seed,
                   BoundaryCondition bc = BoundaryCondition::Dirichlet) {
    std::mt19937_64 rng(seed);
    auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    State s;
    s.bc = bc;
    s.b.resize(n);
    for (auto& z : s.b) z = Complex(2.0 * u() - 1.0, 2.0 * u() - 1.0);
    return s;
}

constexpr Complex kI{0.0, 1.0};

}  // namespace

TEST_CASE("cartesian rhs matches hand evaluations") {
    auto d1 = rhs_cartesian(make_state({Complex(1.0, 0.0)}));
    CHECK(d1[0].real() == doctest::Approx(0.0));
    CHECK(d1[0].imag() == doctest::Approx(-1.0));

    auto d2 = rhs_cartesian(make_state({Complex(1.0, 0.0), Complex(1.0, 0.0)}));
    for (auto z : d2) {
        CHECK(z.real() == doctest::Approx(0.0));
        CHECK(z.imag() == doctest::Approx(1.0));
    }

    auto dz = rhs_cartesian(make_state({Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0)}));
    for (auto z : dz) CHECK(std::abs(z) == 0.0);
}

TEST_CASE("cartesian rhs wraps neighbors under periodic bc") {
    auto d = rhs_cartesian(
        make_state({Complex(1.0, 0.0), kI}, BoundaryCondition::Periodic));
    CHECK(d[0].real() == doctest::Approx(0.0));
    CHECK(d[0].imag() == doctest::Approx(-5.0));
    CHECK(d[1].real() == doctest::Approx(5.0));
    CHECK(d[1].imag() == doctest::Approx(0.0));
}

TEST_CASE("packed rhs agrees with the complex form") {
    for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Periodic}) {
        State s = random_state(17, 42, bc);
        auto ref = rhs_cartesian(s);
        std::vector<double> y(2 * s.size());
        std::vector<double> dy(2 * s.size());
        for (std::size_t j = 0; j < s.size(); ++j) {
            y[2 * j] = s.b[j].real();
            y[2 * j + 1] = s.b[j].imag();
        }
        rhs_cartesian_packed(y.data(), dy.data(), s.size(), bc);
        for (std::size_t j = 0; j < s.size(); ++j) {
            CHECK(dy[2 * j] == ref[j].real());
            CHECK(dy[2 * j + 1] == ref[j].imag());
        }
    }
}

TEST_CASE("hydro rhs matches hand evaluations") {
    HydroState h1{{1.0}, {0.0}, BoundaryCondition::Dirichlet};
    auto [dphi1, drho1] = rhs_hydro(h1);
    CHECK(dphi1[0] == doctest::Approx(-1.0));
    CHECK(drho1[0] == doctest::Approx(0.0));

    const double pi = std::numbers::pi;
    HydroState h3{{1.0, 1.0, 1.0}, {0.0, pi / 4.0, pi / 2.0},
                  BoundaryCondition::Dirichlet};
    auto [dphi3, drho3] = rhs_hydro(h3);
    CHECK(drho3[0] == doctest::Approx(-4.0));
    CHECK(std::abs(drho3[1]) <= 1e-14);
    CHECK(drho3[2] == doctest::Approx(4.0));
}

TEST_CASE("uniform phase freezes the densities") {
    HydroState h{{0.3, 1.2, 0.7, 2.0}, {0.9, 0.9, 0.9, 0.9},
                 BoundaryCondition::Periodic};
    auto [dphi, drho] = rhs_hydro(h);
    for (double d : drho) CHECK(d == doctest::Approx(0.0));
    (void)dphi;
}

TEST_CASE("mass sums squared moduli") {
    CHECK(mass(make_state({Complex(1.0, 0.0), Complex(0.0, 0.0)})) == doctest::Approx(1.0));
    CHECK(mass(make_state({Complex(0.0, 0.0)})) == 0.0);
    CHECK(mass(make_state({Complex(1.0, 1.0), Complex(1.0, 0.0), Complex(0.0, 0.0)})) ==
          doctest::Approx(3.0));
}

TEST_CASE("hamiltonian matches hand evaluations") {
    CHECK(hamiltonian(make_state({Complex(1.0, 0.0)})) == doctest::Approx(0.25));
    CHECK(hamiltonian(make_state({Complex(1.0, 0.0), Complex(1.0, 0.0)})) ==
          doctest::Approx(-0.5));
    CHECK(hamiltonian(make_state({Complex(0.0, 0.0), Complex(0.0, 0.0)})) == 0.0);
}

TEST_CASE("periodic hamiltonian couples the ends") {
    // N=2 ring: both bonds present, each counted once per site.
    State s = make_state({Complex(1.0, 0.0), Complex(1.0, 0.0)},
                         BoundaryCondition::Periodic);
    CHECK(hamiltonian(s) == doctest::Approx(0.25 + 0.25 - 2.0));
}

TEST_CASE("lattice norms weight by site index") {
    State e1 = make_state({Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0)});
    State e3 = make_state({Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(1.0, 0.0)});
    for (double s : {0.5, 1.0, 2.0, 4.0}) {
        CHECK(lattice_norm(e1, {NormFamily::PolynomialSobolev, s}) ==
              doctest::Approx(1.0));
    }
    CHECK(lattice_norm(e3, {NormFamily::PolynomialSobolev, 2.0}) ==
          doctest::Approx(9.0));
    CHECK(lattice_norm(e3, {NormFamily::Dyadic, 2.0}) ==
          doctest::Approx(std::pow(2.0, 1.5)));
}

TEST_CASE("madelung transform pair") {
    const double pi = std::numbers::pi;
    auto h = to_hydro(make_state({Complex(1.0, 0.0)}));
    CHECK(h.rho[0] == doctest::Approx(1.0));
    CHECK(h.phi[0] == doctest::Approx(0.0));

    auto hz = to_hydro(make_state({Complex(0.0, 0.0)}));
    CHECK(hz.rho[0] == 0.0);
    CHECK(hz.phi[0] == 0.0);

    auto hi = to_hydro(make_state({kI}));
    CHECK(hi.rho[0] == doctest::Approx(1.0));
    CHECK(hi.phi[0] == doctest::Approx(pi / 2.0));

    // Principal value lands at +pi on the negative real axis.
    auto hneg = to_hydro(make_state({Complex(-1.0, 0.0)}));
    CHECK(hneg.phi[0] == doctest::Approx(pi));

    auto b1 = from_hydro(HydroState{{1.0}, {0.0}, BoundaryCondition::Dirichlet});
    CHECK(b1.b[0].real() == doctest::Approx(1.0));
    CHECK(b1.b[0].imag() == doctest::Approx(0.0));

    auto b2 = from_hydro(HydroState{{4.0}, {pi}, BoundaryCondition::Dirichlet});
    CHECK(b2.b[0].real() == doctest::Approx(-2.0));
    CHECK(std::abs(b2.b[0].imag()) < 1e-15);

    auto b3 = from_hydro(HydroState{{0.0}, {1.3}, BoundaryCondition::Dirichlet});
    CHECK(std::abs(b3.b[0]) == 0.0);
}

TEST_CASE("madelung roundtrip on a nonvanishing state") {
    State s = random_state(40, 7);
    for (auto& z : s.b) z += Complex(1.5, 0.0);  // keep all moduli > 0
    State back = from_hydro(to_hydro(s));
    for (std::size_t j = 0; j < s.size(); ++j) {
        CHECK(std::abs(back.b[j] - s.b[j]) <= 1e-14 * std::abs(s.b[j]));
    }
}

TEST_CASE("discrete burgers rhs") {
    auto d = rhs_discrete_burgers({1.0, 1.0, 1.0}, BoundaryCondition::Dirichlet);
    CHECK(d[0] == doctest::Approx(4.0));
    CHECK(d[1] == doctest::Approx(0.0));
    CHECK(d[2] == doctest::Approx(-4.0));

    auto dz = rhs_discrete_burgers({0.0, 0.0, 0.0, 0.0}, BoundaryCondition::Dirichlet);
    for (double v : dz) CHECK(v == 0.0);

    auto dc = rhs_discrete_burgers({0.7, 0.7, 0.7, 0.7, 0.7}, BoundaryCondition::Periodic);
    for (double v : dc) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("hydro and cartesian rhs agree through the chain rule") {
    std::mt19937_64 rng(99);
    auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Periodic}) {
        HydroState h;
        h.bc = bc;
        for (int j = 0; j < 12; ++j) {
            h.rho.push_back(0.2 + u());
            h.phi.push_back(2.0 * std::numbers::pi * (u() - 0.5));
        }
        State s = from_hydro(h);
        auto db = rhs_cartesian(s);
        auto [dphi, drho] = rhs_hydro(h);
        for (std::size_t j = 0; j < h.size(); ++j) {
            const Complex w = std::conj(s.b[j]) * db[j];
            CHECK(std::abs(2.0 * w.real() - drho[j]) <= 1e-10);
            CHECK(std::abs(w.imag() / h.rho[j] - dphi[j]) <= 1e-10);
        }
    }
}

TEST_CASE("mass and hamiltonian are stationary along the flow") {
    for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Periodic}) {
        State s = random_state(25, 3, bc);
        auto db = rhs_cartesian(s);

        double dmdt = 0.0;
        for (std::size_t j = 0; j < s.size(); ++j) {
            dmdt += 2.0 * (std::conj(s.b[j]) * db[j]).real();
        }
        CHECK(std::abs(dmdt) <= 1e-12);

        // H is a quartic polynomial along the ray b + tau*db, so the
        // five-point rule below differentiates it exactly; only roundoff
        // remains.
        auto g = [&](double tau) {
            State p = s;
            for (std::size_t j = 0; j < p.size(); ++j) p.b[j] += tau * db[j];
            return hamiltonian(p);
        };
        const double eps = 0.01;
        const double dhdt =
            (g(-2.0 * eps) - 8.0 * g(-eps) + 8.0 * g(eps) - g(2.0 * eps)) /
            (12.0 * eps);
        CHECK(std::abs(dhdt) <= 1e-10);
    }
}

TEST_CASE("zero sites stay zero and split the lattice") {
    State s = random_state(7, 11);
    s.b[3] = Complex(0.0, 0.0);
    auto d = rhs_cartesian(s);
    CHECK(std::abs(d[3]) == 0.0);

    State left = make_state({s.b[0], s.b[1], s.b[2]});
    State right = make_state({s.b[4], s.b[5], s.b[6]});
    auto dl = rhs_cartesian(left);
    auto dr = rhs_cartesian(right);
    for (int j = 0; j < 3; ++j) {
        CHECK(d[j] == dl[j]);
        CHECK(d[4 + j] == dr[j]);
    }
}

TEST_CASE("functionals are phase and scale covariant") {
    State s = random_state(15, 23);
    const double m0 = mass(s);
    const double h0 = hamiltonian(s);
    const NormKind nk{NormFamily::PolynomialSobolev, 2.0};
    const double n0 = lattice_norm(s, nk);

    State rot = s;
    const Complex phase = std::exp(kI * 0.7318);
    for (auto& z : rot.b) z *= phase;
    CHECK(mass(rot) == doctest::Approx(m0).epsilon(1e-12));
    CHECK(hamiltonian(rot) == doctest::Approx(h0).epsilon(1e-12));
    CHECK(lattice_norm(rot, nk) == doctest::Approx(n0).epsilon(1e-12));

    State scaled = s;
    const double lam = 1.7;
    for (auto& z : scaled.b) z *= lam;
    CHECK(mass(scaled) == doctest::Approx(lam * lam * m0).epsilon(1e-13));
    CHECK(hamiltonian(scaled) ==
          doctest::Approx(lam * lam * lam * lam * h0).epsilon(1e-13));
}

TEST_CASE("invalid states are rejected") {
    CHECK_THROWS_AS(validate(State{}), std::invalid_argument);
    State bad = make_state({Complex(1.0, 0.0)});
    bad.b[0] = Complex(std::nan(""), 0.0);
    CHECK_THROWS_AS(rhs_cartesian(bad), std::invalid_argument);
    CHECK_THROWS_AS(mass(bad), std::invalid_argument);

    HydroState hneg{{-0.5}, {0.0}, BoundaryCondition::Dirichlet};
    CHECK_THROWS_AS(rhs_hydro(hneg), std::invalid_argument);
    CHECK_THROWS_AS(from_hydro(hneg), std::domain_error);

    HydroState mismatch{{1.0, 2.0}, {0.0}, BoundaryCondition::Dirichlet};
    CHECK_THROWS_AS(rhs_hydro(mismatch), std::invalid_argument);
}
