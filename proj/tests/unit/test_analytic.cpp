#include <doctest.h>

#include <numbers>
#include <random>

#include "ptlattice/analytic.hpp"
#include "ptlattice/validation.hpp"

using namespace ptlattice;
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

AtomFieldParams<double> random_point(std::mt19937& rng) {
    std::uniform_real_distribution<double> U(0, 1);
    AtomFieldParams<double> p;
    p.omega_p = 0.2 * U(rng);
    p.omega_s = 0.4 * U(rng) - 0.2;
    p.omega_c = 0.1 + 3 * U(rng);
    p.omega_d = 0.1 + 3 * U(rng);
    p.phi = 2 * pi * U(rng);
    const double g = 0.5 + U(rng);
    p.gamma_31 = p.gamma_32 = p.gamma_41 = p.gamma_42 = g;
    return p;
}

}  // namespace

TEST_CASE("closed form vanishes without probe and standing wave") {
    AtomFieldParams<double> p;
    p.omega_p = 0;
    p.omega_s = 0;
    CHECK(rho41_analytic(p) == cd(0, 0));
    const auto v = validate_analytic(p);
    CHECK(v.rel_error == 0);
    CHECK(std::abs(v.rho41_numeric) == 0);
}

TEST_CASE("closed form is purely imaginary at zero phase") {
    std::mt19937 rng(3);
    for (int i = 0; i < 100; ++i) {
        auto p = random_point(rng);
        p.phi = 0;
        const cd r = rho41_analytic(p);
        CHECK(std::abs(r.real()) <= 1e-14);
    }
}

TEST_CASE("conjugation identity under phi -> 2 pi - phi") {
    std::mt19937 rng(5);
    for (int i = 0; i < 100; ++i) {
        auto p = random_point(rng);
        auto q = p;
        q.phi = 2 * pi - p.phi;
        CHECK(std::abs(rho41_analytic(q) + std::conj(rho41_analytic(p))) <= 1e-12);
    }
}

TEST_CASE("closed form tracks the linear solve at weak fields") {
    AtomFieldParams<double> p;
    p.omega_p = 0.05;
    p.omega_s = 0.051;
    p.phi = pi / 2;
    const auto v = validate_analytic(p);
    CHECK(v.rel_error < 0.1);
    CHECK(std::abs(v.rho41_analytic - cd(0.01249951848450039, -0.012750156586154006)) < 1e-12);
}

TEST_CASE("closed form domain checks") {
    AtomFieldParams<double> p;
    p.delta_c = 0.1;
    p.delta_d = 0.1;
    CHECK_THROWS_AS(rho41_analytic(p), InvalidArgument);
    AtomFieldParams<double> q;
    q.gamma_41 = 2;
    CHECK_THROWS_AS(rho41_analytic(q), InvalidArgument);
    AtomFieldParams<double> z;
    z.omega_c = 0;
    z.omega_d = 0;
    CHECK_THROWS_AS(rho41_analytic(z), DegenerateDenominator);
}

TEST_CASE("validation grid error shrinks with weaker fields") {
    AtomFieldParams<double> p;
    p.omega_p = 0.05;
    CouplingProfile c;
    const double phases[] = {0, pi / 2, 1.5 * pi};
    const auto base = validate_grid(p, c, phases, 17);
    REQUIRE(base.size() == 51);
    CHECK(base.front().u == -0.5);
    CHECK(base[8].u == 0);
    CHECK(base[8].omega_s == doctest::Approx(0.001));
    p.omega_p /= 2;
    c.delta_omega_s /= 2;
    const auto half = validate_grid(p, c, phases, 17);
    CHECK(max_rel_error(half) <= max_rel_error(base));
    CHECK(max_rel_error(base) < 0.1);
}
