#include "ptlattice/cli.hpp"

#include <filesystem>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ptlattice/io.hpp"
#include "ptlattice/run_config.hpp"
#include "ptlattice/validation.hpp"

namespace ptlattice {

namespace {

namespace fs = std::filesystem;

struct Emitter {
    const RunConfig& config;
    std::vector<std::string> written;

    void csv(const std::string& stem, const std::function<std::string()>& make) {
        if (config.format == OutputFormat::json) return;
        write(stem + ".csv", make());
    }
    void json(const std::string& stem, const std::function<nlohmann::json()>& make, bool always = false) {
        if (!always && config.format == OutputFormat::csv) return;
        write(stem + ".json", make().dump(2) + "\n");
    }
    void write(const std::string& name, const std::string& content) {
        const fs::path path = fs::path(config.out) / name;
        write_text_file(path.string(), content);
        written.push_back(path.string());
    }
};

std::string summary(const char* command, GratingKind kind, double asymmetry, const PTMetrics& m) {
    std::ostringstream os;
    os << command << ": class=" << to_string(kind) << " asymmetry=" << format_double(asymmetry)
       << " d_im=" << format_double(m.d_im_antisym) << " d_re=" << format_double(m.d_re_sym)
       << " balance=" << format_double(m.gain_loss_balance);
    return os.str();
}

struct Result2d {
    SusceptibilityProfile chi;
    TransmissionProfile t;
    PTMetrics metrics;
    GratingClass grating_class;
    double asymmetry{0};
};

Result2d pipeline_2d(const RunConfig& c) {
    Result2d r;
    r.chi = sample_chi_2d(c.atom, c.coupling, c.geometry_2d(), c.n_x, c.n_y, c.backend);
    r.t = transmission(r.chi, c.grating_2d());
    r.metrics = pt_metrics(r.chi);
    r.grating_class = classify_grating(r.metrics, re_im_ratio(r.chi), c.thresholds);
    r.asymmetry = asymmetry_metric(order_intensities(r.t));
    return r;
}

void cmd_chi(const RunConfig& c, int dims, Emitter& emit, std::ostream& out) {
    const auto header = c.entries();
    if (dims == 2) {
        const Result2d r = pipeline_2d(c);
        emit.csv("chi2d", [&] { return chi_csv(r.chi, header); });
        emit.json("chi2d", [&] { return chi_json(r.chi, header); });
        out << summary("chi2d", r.grating_class.kind, r.asymmetry, r.metrics) << "\n";
        return;
    }
    const PipelineResult r = run_pipeline_1d(c.pipeline_1d());
    emit.csv("chi1d", [&] { return chi_csv(r.chi, header); });
    emit.json("chi1d", [&] { return chi_json(r.chi, header); });
    out << summary("chi1d", r.grating_class.kind, r.asymmetry, r.metrics) << "\n";
}

void cmd_diffract1d(const RunConfig& c, Emitter& emit, std::ostream& out) {
    const auto header = c.entries();
    const PipelineResult r = run_pipeline_1d(c.pipeline_1d());
    const FarFieldPattern pattern = far_field_1d(r.transmission, sine_grid(c.s_points));
    emit.csv("pattern1d", [&] { return pattern_csv(pattern, header); });
    emit.json("pattern1d", [&] { return pattern_json(pattern, header); });
    out << summary("diffract1d", r.grating_class.kind, r.asymmetry, r.metrics) << "\n";
}

void cmd_diffract2d(const RunConfig& c, Emitter& emit, std::ostream& out) {
    const auto header = c.entries();
    const Result2d r = pipeline_2d(c);
    const Eigen::ArrayXd s = sine_grid(c.s_points_2d);
    const FarFieldPattern pattern = far_field_2d(r.t, s, s);
    emit.csv("pattern2d", [&] { return pattern_csv(pattern, header); });
    emit.json("pattern2d", [&] { return pattern_json(pattern, header); });
    out << summary("diffract2d", r.grating_class.kind, r.asymmetry, r.metrics) << "\n";
}

void cmd_orders(const RunConfig& c, int dims, Emitter& emit, std::ostream& out) {
    const auto header = c.entries();
    if (dims == 2) {
        const Result2d r = pipeline_2d(c);
        const OrderTable orders = order_intensities(r.t);
        emit.csv("orders2d", [&] { return orders_csv(orders, header); });
        emit.json("orders2d", [&] { return orders_json(orders, header); });
        out << summary("orders2d", r.grating_class.kind, r.asymmetry, r.metrics) << "\n";
        return;
    }
    const PipelineResult r = run_pipeline_1d(c.pipeline_1d());
    emit.csv("orders1d", [&] { return orders_csv(r.orders, header); });
    emit.json("orders1d", [&] { return orders_json(r.orders, header); });
    out << summary("orders1d", r.grating_class.kind, r.asymmetry, r.metrics) << "\n";
}

void cmd_sweep(const RunConfig& c, Emitter& emit, std::ostream& out) {
    const auto header = c.entries();
    const auto values = c.sweep_values();
    const SweepTable table = sweep(c.pipeline_1d(), c.sweep_parameter, values);
    emit.csv("sweep", [&] { return sweep_csv(table, c.grating_1d().max_order_x(), header); });
    emit.json("sweep", [&] { return sweep_json(table, header); });

    int failed = 0;
    double max_abs_asym = 0;
    for (const auto& row : table.rows) {
        if (!row.ok()) {
            ++failed;
            continue;
        }
        max_abs_asym = std::max(max_abs_asym, std::abs(row.asymmetry));
    }
    const SweepRow& last = table.rows.back();
    out << "sweep: parameter=" << to_string(table.parameter) << " rows=" << table.rows.size()
        << " failed=" << failed << " max_abs_asymmetry=" << format_double(max_abs_asym)
        << " last_class=" << (last.ok() ? to_string(*last.kind) : "error")
        << " last_asymmetry=" << format_double(last.asymmetry) << "\n";
}

void cmd_validate(const RunConfig& c, Emitter& emit, std::ostream& out) {
    const auto header = c.entries();
    const double phases[] = {0, std::numbers::pi / 2, 1.5 * std::numbers::pi};
    const auto points = validate_grid(c.atom, c.coupling, phases, 17);
    emit.json(
        "validate",
        [&] {
            nlohmann::json j;
            j["params"] = params_json(header);
            auto list = nlohmann::json::array();
            for (const auto& p : points) {
                list.push_back({{"u", p.u},
                                {"omega_s", p.omega_s},
                                {"phi", p.phi},
                                {"rho41_numeric", {p.result.rho41_numeric.real(), p.result.rho41_numeric.imag()}},
                                {"rho41_analytic", {p.result.rho41_analytic.real(), p.result.rho41_analytic.imag()}},
                                {"rel_error", p.result.rel_error}});
            }
            j["points"] = list;
            j["max_rel_error"] = max_rel_error(points);
            return j;
        },
        true);
    out << "validate: points=" << points.size() << " max_rel_error=" << format_double(max_rel_error(points))
        << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Steady-state susceptibility, diffraction and PT analysis of a phase-controlled "
                 "double-lambda atomic lattice",
                 "ptlattice"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    std::string format;
    app.add_option("--config", config_path, "flat key = value configuration file");
    app.add_option("--param", overrides, "override one key, e.g. --param phi=0.5pi (repeatable)")
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--format", format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));

    int chi_dims = 1, orders_dims = 1;
    auto* chi = app.add_subcommand("chi", "sampled normalized susceptibility over one cell");
    chi->add_option("--dims", chi_dims, "1 or 2")->check(CLI::IsMember({1, 2}));
    auto* d1 = app.add_subcommand("diffract1d", "1D far-field pattern");
    auto* d2 = app.add_subcommand("diffract2d", "2D far-field pattern");
    auto* orders = app.add_subcommand("orders", "diffraction order intensities");
    orders->add_option("--dims", orders_dims, "1 or 2")->check(CLI::IsMember({1, 2}));

    std::string sweep_parameter, sweep_from, sweep_to, sweep_points;
    auto* sw = app.add_subcommand("sweep", "pipeline evaluated over a parameter range");
    sw->add_option("--parameter", sweep_parameter, "coupling_both, ratio_d_over_c or phase");
    sw->add_option("--from", sweep_from, "first value");
    sw->add_option("--to", sweep_to, "last value");
    sw->add_option("--points", sweep_points, "number of values");
    auto* val = app.add_subcommand("validate", "closed-form rho_41 against the linear solve");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    RunConfig config;
    std::vector<std::string> problems;
    try {
        if (!config_path.empty()) config = load_config_file(config_path);
    } catch (const ConfigError& e) {
        problems = e.problems();
    }
    try {
        std::vector<std::string> all = overrides;
        if (!out_dir.empty()) all.push_back("out=" + out_dir);
        if (!format.empty()) all.push_back("format=" + format);
        if (!sweep_parameter.empty()) all.push_back("sweep_parameter=" + sweep_parameter);
        if (!sweep_from.empty()) all.push_back("sweep_from=" + sweep_from);
        if (!sweep_to.empty()) all.push_back("sweep_to=" + sweep_to);
        if (!sweep_points.empty()) all.push_back("sweep_points=" + sweep_points);
        try {
            apply_overrides(config, all);
        } catch (const ConfigError& e) {
            problems.insert(problems.end(), e.problems().begin(), e.problems().end());
        }
        for (auto& p : config.validate()) problems.push_back(std::move(p));
        if (!problems.empty()) throw ConfigError(problems);
        fs::create_directories(config.out);
    } catch (const ConfigError& e) {
        err << "configuration error:\n";
        for (const auto& p : e.problems()) err << "  " << p << "\n";
        return 1;
    } catch (const fs::filesystem_error& e) {
        err << "configuration error: " << e.what() << "\n";
        return 1;
    }

    Emitter emit{config, {}};
    try {
        if (chi->parsed()) cmd_chi(config, chi_dims, emit, out);
        else if (d1->parsed()) cmd_diffract1d(config, emit, out);
        else if (d2->parsed()) cmd_diffract2d(config, emit, out);
        else if (orders->parsed()) cmd_orders(config, orders_dims, emit, out);
        else if (sw->parsed()) cmd_sweep(config, emit, out);
        else if (val->parsed()) cmd_validate(config, emit, out);
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.name() << "\n  " << e.what() << "\n";
        return 2;
    } catch (const InvalidArgument& e) {
        err << "configuration error:\n  " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace ptlattice
