#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ptlattice/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "ptlattice");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = ptlattice::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("ptlattice_cli_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::pair<double, double>> pattern_rows(const std::string& csv) {
    std::vector<std::pair<double, double>> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 's') continue;
        const auto comma = line.find(',');
        rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return rows;
}

}  // namespace

TEST_CASE("validate writes a report") {
    const auto dir = scratch("validate");
    const auto r = invoke({"validate", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "validate.json"));
    CHECK(j["points"].size() == 51);
    CHECK(j["points"][0].contains("rho41_numeric"));
    CHECK(j["points"][0].contains("rho41_analytic"));
    CHECK(j["max_rel_error"].get<double>() < 0.1);
    CHECK(j["params"]["phi"].get<double>() > 4.7);
    CHECK(r.out.find("max_rel_error=") != std::string::npos);
}

TEST_CASE("zero-phase pattern is symmetric and classified amplitude") {
    const auto dir = scratch("d1");
    const auto r = invoke({"diffract1d", "--param", "phi=0", "--param", "backend=analytic", "--param", "n=256",
                           "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("class=amplitude") != std::string::npos);
    const auto rows = pattern_rows(slurp(dir / "pattern1d.csv"));
    REQUIRE(rows.size() == 801);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].first == -rows[rows.size() - 1 - i].first);
        CHECK(rows[i].second == doctest::Approx(rows[rows.size() - 1 - i].second).epsilon(1e-12));
    }
}

TEST_CASE("config file plus overrides, both formats, byte-identical reruns") {
    const auto dir = scratch("orders");
    fs::create_directories(dir);
    {
        std::ofstream cfg(dir / "run.cfg");
        cfg << "# small run\nn = 128\nformat = both\n";
    }
    const auto a = invoke({"--config", (dir / "run.cfg").string(), "orders", "--out", (dir / "a").string()});
    REQUIRE(a.code == 0);
    const std::string csv = slurp(dir / "a" / "orders1d.csv");
    const std::string json = slurp(dir / "a" / "orders1d.json");
    const auto b = invoke({"orders", "--config", (dir / "run.cfg").string(), "--out", (dir / "a").string()});
    REQUIRE(b.code == 0);
    CHECK(slurp(dir / "a" / "orders1d.csv") == csv);
    CHECK(slurp(dir / "a" / "orders1d.json") == json);
    CHECK(slurp(dir / "a" / "orders1d.csv").find("# n = 128\n") != std::string::npos);
}

TEST_CASE("2D commands") {
    const auto dir = scratch("two");
    auto r = invoke({"orders", "--dims", "2", "--param", "n_x=64", "--param", "n_y=64", "--param", "backend=analytic",
                     "--out", dir.string(), "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "orders2d.json"));
    CHECK(j["orders"].size() == 81);
    CHECK(j["orders"][0].contains("n_y"));

    r = invoke({"diffract2d", "--param", "n_x=64", "--param", "n_y=64", "--param", "s_points_2d=21", "--param",
                "backend=analytic", "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "pattern2d.csv"));

    r = invoke({"chi", "--dims", "2", "--param", "n_x=64", "--param", "n_y=64", "--param", "backend=analytic",
                "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(slurp(dir / "chi2d.csv").find("u,v,re_chi,im_chi\n") != std::string::npos);
}

TEST_CASE("sweep subcommand") {
    const auto dir = scratch("sweep");
    const auto r = invoke({"sweep", "--parameter", "coupling_both", "--from", "0.5", "--to", "2", "--points", "4",
                           "--param", "n=64", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const std::string csv = slurp(dir / "sweep.csv");
    CHECK(csv.find("# sweep_points = 4\n") != std::string::npos);
    int data = 0;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);) data += !line.empty() && line[0] != '#' && line[0] != 'p';
    CHECK(data == 4);
    CHECK(r.out.find("rows=4") != std::string::npos);
    CHECK(r.out.find("failed=0") != std::string::npos);
}

TEST_CASE("configuration errors exit 1 and list every problem") {
    const auto r = invoke({"chi", "--param", "omega_c=-1", "--param", "bogus=3", "--param", "n=100"});
    CHECK(r.code == 1);
    CHECK(r.err.find("omega_c") != std::string::npos);
    CHECK(r.err.find("bogus") != std::string::npos);
    CHECK(r.err.find("n must be") != std::string::npos);

    CHECK(invoke({"frobnicate"}).code == 1);
    CHECK(invoke({}).code == 1);
    CHECK(invoke({"--config", "/nonexistent/cfg", "chi"}).code == 1);
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("numerical errors exit 2 with the error name") {
    const auto r = invoke({"chi", "--param", "backend=analytic", "--param", "omega_c=0", "--param", "omega_d=0",
                           "--param", "n=64", "--out", scratch("num").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("DegenerateDenominator") != std::string::npos);
}
