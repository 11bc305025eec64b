#include <doctest.h>

#include <numbers>

#include "ptlattice/susceptibility.hpp"

using namespace ptlattice;
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

TEST_CASE("standing-wave coupling values") {
    CouplingProfile c;
    CHECK(coupling_at(c, 0) == 0.001);
    CHECK(coupling_at(c, 0.25) == doctest::Approx(0.051).epsilon(1e-15));
    CouplingProfile c2;
    c2.dims = Dims::twoD;
    CHECK(coupling_at(c2, 0.25, -0.25) == doctest::Approx(0.001).epsilon(1e-15));
    CHECK_THROWS_AS(coupling_at(c2, 0.25), InvalidArgument);
    CHECK_THROWS_AS(coupling_at(c, 0.25, 0.1), InvalidArgument);
}

TEST_CASE("standing wave is odd about the trap centre") {
    CouplingProfile c;
    for (double u : cell_grid(64)) CHECK(coupling_at(c, -u) + coupling_at(c, u) == doctest::Approx(2 * c.omega_s0));
}

TEST_CASE("grid layout") {
    CHECK(is_valid_grid_size(64));
    CHECK(is_valid_grid_size(2048));
    CHECK_FALSE(is_valid_grid_size(32));
    CHECK_FALSE(is_valid_grid_size(96));
    const auto g = cell_grid(64);
    CHECK(g(0) == -0.5);
    CHECK(g(32) == 0);
    CHECK(g(63) == 0.5 - 1.0 / 64);
    for (int k = 1; k < 64; ++k) CHECK(g(64 - k) == -g(k));
}

TEST_CASE("open-loop susceptibility") {
    AtomFieldParams<double> p;
    p.omega_s = 0;
    p.phi = 0;
    const cd chi = chi_normalized(p, Backend::numeric);
    CHECK(chi.imag() > 0);
    CHECK(std::abs(chi - cd(0, 0.24960998439940962)) < 1e-10);
    p.omega_p = 0;
    CHECK_THROWS_AS(chi_normalized(p, Backend::numeric), InvalidArgument);
}

TEST_CASE("standing-wave antinode response") {
    AtomFieldParams<double> p;
    p.omega_s = 0.051;
    p.phi = pi / 2;
    const cd chi = chi_normalized(p, Backend::numeric);
    CHECK(std::abs(chi.real()) > 0.1);
    CHECK(std::abs(chi - cd(0.012460279827216224, -0.012709289935045354) / 0.05) < 1e-8);
    p.phi = 0;
    CHECK(chi_normalized(p, Backend::analytic).real() == 0);
}

TEST_CASE("envelope without standing wave") {
    AtomFieldParams<double> p;
    CouplingProfile c{0, 0, Dims::oneD};
    LatticeGeometry g;
    const auto s = sample_chi_1d(p, c, g, 64, Backend::numeric);
    for (int k = 0; k < 64; ++k) {
        const double u = s.u(k);
        CHECK(std::abs(s.chi(k, 0) / s.chi(32, 0) - std::exp(-u * u / 0.04)) < 1e-12);
    }
    CHECK(std::abs(s.chi(0, 0) / s.chi(32, 0)) == doctest::Approx(std::exp(-6.25)).epsilon(1e-12));
    CHECK(std::exp(-6.25) == doctest::Approx(1.93e-3).epsilon(0.01));

    const auto s2 = sample_chi_2d(p, CouplingProfile{0, 0, Dims::twoD}, g, 64, 64, Backend::numeric);
    for (int k = 0; k < 64; k += 7)
        for (int l = 0; l < 64; l += 5) {
            const double e = std::exp(-s2.u(k) * s2.u(k) / 0.04 - s2.v(l) * s2.v(l) / 0.04);
            CHECK(std::abs(s2.chi(k, l) / s2.chi(32, 32) - e) < 1e-12);
        }
}

TEST_CASE("grid refinement reproduces shared samples") {
    AtomFieldParams<double> p;
    p.phi = pi / 2;
    const auto a = sample_chi_1d(p, CouplingProfile{}, LatticeGeometry{}, 64, Backend::numeric);
    const auto b = sample_chi_1d(p, CouplingProfile{}, LatticeGeometry{}, 128, Backend::numeric);
    for (int k = 0; k < 64; ++k) CHECK(a.chi(k, 0) == b.chi(2 * k, 0));
}

TEST_CASE("balanced gain and loss at quarter-period phase") {
    AtomFieldParams<double> p;
    p.phi = pi / 2;
    const auto s = sample_chi_1d(p, CouplingProfile{}, LatticeGeometry{}, 256, Backend::numeric);
    CHECK(s.chi.imag().maxCoeff() > 0);
    CHECK(s.chi.imag().minCoeff() < 0);
}

TEST_CASE("2D slice at v = 0 equals the 1D sample") {
    AtomFieldParams<double> p;
    p.phi = pi / 2;
    const auto one = sample_chi_1d(p, CouplingProfile{}, LatticeGeometry{}, 64, Backend::numeric);
    const auto two = sample_chi_2d(p, CouplingProfile{}, LatticeGeometry{}, 64, 64, Backend::numeric);
    REQUIRE(two.v(32) == 0);
    CHECK((two.chi.col(32) - one.chi.col(0)).abs().maxCoeff() < 1e-15);
}

TEST_CASE("2D imaginary part is close to odd at quarter-period phase") {
    AtomFieldParams<double> p;
    p.phi = pi / 2;
    const auto s = sample_chi_2d(p, CouplingProfile{}, LatticeGeometry{}, 64, 64, Backend::numeric);
    double worst = 0, peak = 0;
    for (int k = 1; k < 64; ++k)
        for (int l = 1; l < 64; ++l) {
            worst = std::max(worst, std::abs(s.chi(k, l).imag() + s.chi(64 - k, 64 - l).imag()));
            peak = std::max(peak, std::abs(s.chi(k, l).imag()));
        }
    CHECK(worst / peak < 0.1);
}

TEST_CASE("invalid sampling requests") {
    AtomFieldParams<double> p;
    CHECK_THROWS_AS(sample_chi_1d(p, CouplingProfile{}, LatticeGeometry{}, 100, Backend::numeric), InvalidArgument);
    CHECK_THROWS_AS(sample_chi_1d(p, CouplingProfile{}, LatticeGeometry{0, 0.2}, 64, Backend::numeric),
                    InvalidArgument);
}

TEST_CASE("failing points carry their coordinates") {
    AtomFieldParams<double> p;
    p.omega_c = 0;
    p.omega_d = 0;
    try {
        sample_chi_1d(p, CouplingProfile{}, LatticeGeometry{}, 64, Backend::analytic);
        FAIL("expected DegenerateDenominator");
    } catch (const DegenerateDenominator& e) {
        CHECK(std::string(e.what()).find("u = -0.5") != std::string::npos);
        CHECK(std::string(e.name()) == "DegenerateDenominator");
    }
}
