#include <doctest.h>

#include <numbers>

#include <json.hpp>

#include "ptlattice/io.hpp"
#include "ptlattice/run_config.hpp"

using namespace ptlattice;
constexpr double pi = std::numbers::pi;

TEST_CASE("defaults are the three-quarter phase lattice") {
    RunConfig c;
    CHECK(c.atom.omega_p == 0.05);
    CHECK(c.coupling.omega_s0 == 0.001);
    CHECK(c.coupling.delta_omega_s == 0.05);
    CHECK(c.atom.omega_c == 2);
    CHECK(c.atom.omega_d == 2);
    CHECK(c.atom.phi == 1.5 * pi);
    CHECK(c.L_over_xi == 20);
    CHECK(c.sigma == 0.2);
    CHECK(c.R == 4);
    CHECK(c.M == 5);
    CHECK(c.atom.all_detunings_zero());
    CHECK(c.atom.equal_decay_rates());
    CHECK(c.atom.gamma_41 == 1);
    CHECK(c.validate().empty());
}

TEST_CASE("phase parsing") {
    CHECK(parse_phase("1.5pi") == 1.5 * pi);
    CHECK(parse_phase("pi") == pi);
    CHECK(parse_phase("-pi") == -pi);
    CHECK(parse_phase("-0.5pi") == -0.5 * pi);
    CHECK(parse_phase("0.25") == 0.25);
    CHECK_FALSE(parse_phase("pie"));
    CHECK_FALSE(parse_phase(""));
}

TEST_CASE("config text with comments and all problems reported") {
    const auto c = parse_config_text("# lattice\nphi = 0.5pi  # quarter\nomega_c=1.5\n\nbackend = analytic\nformat = both\n");
    CHECK(c.atom.phi == 0.5 * pi);
    CHECK(c.atom.omega_c == 1.5);
    CHECK(c.backend == Backend::analytic);
    CHECK(c.format == OutputFormat::both);
    try {
        parse_config_text("nonsense\nfoo = 1\nomega_p = abc\nn = 12.5\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        REQUIRE(e.problems().size() == 4);
        CHECK(e.problems()[0].find("line 1") == 0);
        CHECK(e.problems()[1].find("unknown key") != std::string::npos);
    }
}

TEST_CASE("overrides and validation") {
    RunConfig c;
    apply_overrides(c, {"omega_d=4", "sigma_x=0.3", "M_y=7", "sweep_parameter=ratio_d_over_c"});
    CHECK(c.atom.omega_d == 4);
    CHECK(c.geometry_2d().sigma_x == 0.3);
    CHECK(c.geometry_2d().sigma_y == 0.2);
    CHECK(c.grating_2d().M_y == 7);
    CHECK(c.grating_2d().M == 5);
    CHECK(c.sweep_parameter == SweepParameter::ratio_d_over_c);
    CHECK_THROWS_AS(apply_overrides(c, {"noequals"}), ConfigError);

    RunConfig bad;
    apply_overrides(bad, {"sigma=1.5", "n=100", "gamma_31=0", "delta_p=0.2", "sweep_to=0"});
    CHECK(bad.validate().size() >= 5);
}

TEST_CASE("sweep values") {
    RunConfig c;
    const auto v = c.sweep_values();
    REQUIRE(v.size() == 60);
    CHECK(v.front() == 0.01);
    CHECK(v.back() == 3);
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
}

TEST_CASE("entries round-trip through the parser") {
    RunConfig c;
    apply_overrides(c, {"phi=0.3", "omega_s0=-0.002", "R_y=3", "format=json"});
    std::string text;
    for (const auto& [k, v] : c.entries()) text += k + " = " + v + "\n";
    const RunConfig back = parse_config_text(text);
    CHECK(back.entries() == c.entries());
}

TEST_CASE("shortest round-trip formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2) == "2");
    CHECK(format_double(1.0 / 3) == "0.3333333333333333");
    CHECK(std::stod(format_double(4.71238898038469)) == 4.71238898038469);
    CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("outputs embed the resolved parameters") {
    RunConfig c;
    c.n = 64;
    const auto header = c.entries();
    const auto r = run_pipeline_1d(c.pipeline_1d());

    const std::string csv = orders_csv(r.orders, header);
    CHECK(csv.find("# omega_p = 0.05\n") == 0);
    CHECK(csv.find("# backend = numeric\n") != std::string::npos);
    CHECK(csv.find("\nn,intensity\n") != std::string::npos);

    const auto j = orders_json(r.orders, header);
    CHECK(j["params"]["omega_p"] == 0.05);
    CHECK(j["params"]["backend"] == "numeric");
    CHECK(j["orders"].size() == 9);
    CHECK(j["orders"][4]["n"] == 0);

    const std::string chi = chi_csv(r.chi, header);
    CHECK(chi.find("u,re_chi,im_chi\n") != std::string::npos);
    CHECK(chi_json(r.chi, header)["u"].size() == 64);
}

TEST_CASE("sweep tables report failures per row") {
    RunConfig c;
    c.n = 64;
    c.backend = Backend::analytic;
    const double values[] = {0, 2};
    const auto t = sweep(c.pipeline_1d(), SweepParameter::coupling_both, values);
    const std::string csv = sweep_csv(t, 4, c.entries());
    CHECK(csv.find("param,I_-4,I_-3,I_-2,I_-1,I_0,I_1,I_2,I_3,I_4,asymmetry,d_im,d_re,balance,class\n") !=
          std::string::npos);
    CHECK(csv.find("error:DegenerateDenominator") != std::string::npos);
    const auto j = sweep_json(t, c.entries());
    CHECK(j["rows"].size() == 2);
    CHECK(j["rows"][0].contains("error"));
}
