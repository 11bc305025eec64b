#include "ptlattice/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "ptlattice/io.hpp"

namespace ptlattice {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_number(const std::string& text) {
    double v = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
    return v;
}

std::optional<int> parse_int(const std::string& text) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
    return v;
}

struct Field {
    std::function<bool(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

Field real(double RunConfig::*member) {
    return {[member](RunConfig& c, const std::string& v) {
                auto x = parse_number(v);
                if (x) c.*member = *x;
                return x.has_value();
            },
            [member](const RunConfig& c) { return format_double(c.*member); }};
}

Field integer(int RunConfig::*member) {
    return {[member](RunConfig& c, const std::string& v) {
                auto x = parse_int(v);
                if (x) c.*member = *x;
                return x.has_value();
            },
            [member](const RunConfig& c) { return std::to_string(c.*member); }};
}

template <typename Get>
Field ref_real(Get get) {
    return {[get](RunConfig& c, const std::string& v) {
                auto x = parse_number(v);
                if (x) get(c) = *x;
                return x.has_value();
            },
            [get](const RunConfig& c) { return format_double(get(c)); }};
}

template <typename T>
Field optional_field(std::optional<T> RunConfig::*member, std::function<T(const RunConfig&)> fallback) {
    return {[member](RunConfig& c, const std::string& v) {
                if constexpr (std::is_same_v<T, int>) {
                    auto x = parse_int(v);
                    if (x) c.*member = *x;
                    return x.has_value();
                } else {
                    auto x = parse_number(v);
                    if (x) c.*member = *x;
                    return x.has_value();
                }
            },
            [member, fallback](const RunConfig& c) {
                const T value = (c.*member).value_or(fallback(c));
                if constexpr (std::is_same_v<T, int>) {
                    return std::to_string(value);
                } else {
                    return format_double(value);
                }
            }};
}

const std::vector<std::pair<std::string, Field>>& registry() {
    static const std::vector<std::pair<std::string, Field>> fields = [] {
        std::vector<std::pair<std::string, Field>> f;
        f.emplace_back("omega_p", ref_real([](auto& c) -> auto& { return c.atom.omega_p; }));
        f.emplace_back("omega_s0", ref_real([](auto& c) -> auto& { return c.coupling.omega_s0; }));
        f.emplace_back("delta_omega_s",
                       ref_real([](auto& c) -> auto& { return c.coupling.delta_omega_s; }));
        f.emplace_back("omega_c", ref_real([](auto& c) -> auto& { return c.atom.omega_c; }));
        f.emplace_back("omega_d", ref_real([](auto& c) -> auto& { return c.atom.omega_d; }));
        f.emplace_back("phi", Field{[](RunConfig& c, const std::string& v) {
                                        auto x = parse_phase(v);
                                        if (x) c.atom.phi = *x;
                                        return x.has_value();
                                    },
                                    [](const RunConfig& c) { return format_double(c.atom.phi); }});
        f.emplace_back("delta_s", ref_real([](auto& c) -> auto& { return c.atom.delta_s; }));
        f.emplace_back("delta_p", ref_real([](auto& c) -> auto& { return c.atom.delta_p; }));
        f.emplace_back("delta_c", ref_real([](auto& c) -> auto& { return c.atom.delta_c; }));
        f.emplace_back("delta_d", ref_real([](auto& c) -> auto& { return c.atom.delta_d; }));
        f.emplace_back("gamma_31", ref_real([](auto& c) -> auto& { return c.atom.gamma_31; }));
        f.emplace_back("gamma_32", ref_real([](auto& c) -> auto& { return c.atom.gamma_32; }));
        f.emplace_back("gamma_41", ref_real([](auto& c) -> auto& { return c.atom.gamma_41; }));
        f.emplace_back("gamma_42", ref_real([](auto& c) -> auto& { return c.atom.gamma_42; }));
        f.emplace_back("sigma", real(&RunConfig::sigma));
        f.emplace_back("sigma_x", optional_field<double>(&RunConfig::sigma_x, [](const RunConfig& c) { return c.sigma; }));
        f.emplace_back("sigma_y", optional_field<double>(&RunConfig::sigma_y, [](const RunConfig& c) { return c.sigma; }));
        f.emplace_back("L_over_xi", real(&RunConfig::L_over_xi));
        f.emplace_back("R", real(&RunConfig::R));
        f.emplace_back("M", integer(&RunConfig::M));
        f.emplace_back("R_x", optional_field<double>(&RunConfig::R_x, [](const RunConfig& c) { return c.R; }));
        f.emplace_back("R_y", optional_field<double>(&RunConfig::R_y, [](const RunConfig& c) { return c.R; }));
        f.emplace_back("M_x", optional_field<int>(&RunConfig::M_x, [](const RunConfig& c) { return c.M; }));
        f.emplace_back("M_y", optional_field<int>(&RunConfig::M_y, [](const RunConfig& c) { return c.M; }));
        f.emplace_back("n", integer(&RunConfig::n));
        f.emplace_back("n_x", integer(&RunConfig::n_x));
        f.emplace_back("n_y", integer(&RunConfig::n_y));
        f.emplace_back("s_points", integer(&RunConfig::s_points));
        f.emplace_back("s_points_2d", integer(&RunConfig::s_points_2d));
        f.emplace_back("backend", Field{[](RunConfig& c, const std::string& v) {
                                            if (v == "numeric") c.backend = Backend::numeric;
                                            else if (v == "analytic") c.backend = Backend::analytic;
                                            else return false;
                                            return true;
                                        },
                                        [](const RunConfig& c) { return std::string(to_string(c.backend)); }});
        f.emplace_back("tau", ref_real([](auto& c) -> auto& { return c.thresholds.tau; }));
        f.emplace_back("tau_balance", ref_real([](auto& c) -> auto& { return c.thresholds.tau_balance; }));
        f.emplace_back("tau_amplitude",
                       ref_real([](auto& c) -> auto& { return c.thresholds.tau_amplitude; }));
        f.emplace_back("tau_asymmetry", ref_real([](auto& c) -> auto& { return c.thresholds.asymmetry; }));
        f.emplace_back("sweep_parameter",
                       Field{[](RunConfig& c, const std::string& v) {
                                 auto p = parse_sweep_parameter(v);
                                 if (p) c.sweep_parameter = *p;
                                 return p.has_value();
                             },
                             [](const RunConfig& c) { return std::string(to_string(c.sweep_parameter)); }});
        f.emplace_back("sweep_from", real(&RunConfig::sweep_from));
        f.emplace_back("sweep_to", real(&RunConfig::sweep_to));
        f.emplace_back("sweep_points", integer(&RunConfig::sweep_points));
        f.emplace_back("out", Field{[](RunConfig& c, const std::string& v) {
                                        c.out = v;
                                        return !v.empty();
                                    },
                                    [](const RunConfig& c) { return c.out; }});
        f.emplace_back("format", Field{[](RunConfig& c, const std::string& v) {
                                           if (v == "csv") c.format = OutputFormat::csv;
                                           else if (v == "json") c.format = OutputFormat::json;
                                           else if (v == "both") c.format = OutputFormat::both;
                                           else return false;
                                           return true;
                                       },
                                       [](const RunConfig& c) {
                                           switch (c.format) {
                                               case OutputFormat::csv: return std::string("csv");
                                               case OutputFormat::json: return std::string("json");
                                               case OutputFormat::both: return std::string("both");
                                           }
                                           return std::string("csv");
                                       }});
        return f;
    }();
    return fields;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& p : v) s += (s.empty() ? "" : "; ") + p;
    return s;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("configuration error: " + join(problems)), problems_(std::move(problems)) {}

std::optional<double> parse_phase(const std::string& raw) {
    const std::string text = trim(raw);
    if (text.size() >= 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
        const std::string factor = trim(text.substr(0, text.size() - 2));
        if (factor.empty() || factor == "+") return std::numbers::pi;
        if (factor == "-") return -std::numbers::pi;
        auto f = parse_number(factor);
        if (!f) return std::nullopt;
        return *f * std::numbers::pi;
    }
    return parse_number(text);
}

PipelineConfig RunConfig::pipeline_1d() const {
    PipelineConfig p;
    p.atom = atom;
    p.coupling = coupling;
    p.coupling.dims = Dims::oneD;
    p.geometry = geometry_1d();
    p.grating = grating_1d();
    p.n = n;
    p.backend = backend;
    p.thresholds = thresholds;
    return p;
}

std::vector<double> RunConfig::sweep_values() const {
    std::vector<double> v(static_cast<std::size_t>(std::max(sweep_points, 0)));
    for (int i = 0; i < sweep_points; ++i) {
        v[i] = sweep_points == 1 ? sweep_from
                                 : sweep_from + (sweep_to - sweep_from) * i / static_cast<double>(sweep_points - 1);
    }
    return v;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    for (const auto& [name, field] : registry()) {
        if (name == key) {
            if (!field.set(*this, trim(value))) {
                throw ConfigError({key + ": cannot parse value '" + value + "'"});
            }
            return;
        }
    }
    throw ConfigError({key + ": unknown key"});
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [name, field] : registry()) out.emplace_back(name, field.get(*this));
    return out;
}

std::vector<std::string> RunConfig::validate() const {
    std::vector<std::string> bad;
    for (const auto& v : violations(atom)) bad.push_back(v);
    if (!std::isfinite(coupling.omega_s0)) bad.emplace_back("omega_s0 must be finite");
    if (!std::isfinite(coupling.delta_omega_s) || coupling.delta_omega_s < 0) {
        bad.emplace_back("delta_omega_s must be finite and >= 0");
    }
    auto sigma_ok = [&](const char* key, double s) {
        if (!(s > 0 && s <= 1)) bad.push_back(std::string(key) + " must lie in (0, 1]");
    };
    sigma_ok("sigma", sigma);
    sigma_ok("sigma_x", sigma_x.value_or(sigma));
    sigma_ok("sigma_y", sigma_y.value_or(sigma));
    if (!(L_over_xi > 0) || !std::isfinite(L_over_xi)) bad.emplace_back("L_over_xi must be > 0");
    auto r_ok = [&](const char* key, double r) {
        if (!(r > 0) || !std::isfinite(r)) bad.push_back(std::string(key) + " must be > 0");
    };
    r_ok("R", R);
    r_ok("R_x", R_x.value_or(R));
    r_ok("R_y", R_y.value_or(R));
    auto m_ok = [&](const char* key, int m) {
        if (m < 1) bad.push_back(std::string(key) + " must be >= 1");
    };
    m_ok("M", M);
    m_ok("M_x", M_x.value_or(M));
    m_ok("M_y", M_y.value_or(M));
    auto grid_ok = [&](const char* key, int g) {
        if (!is_valid_grid_size(g)) bad.push_back(std::string(key) + " must be a power of two >= 64");
    };
    grid_ok("n", n);
    grid_ok("n_x", n_x);
    grid_ok("n_y", n_y);
    if (s_points < 2) bad.emplace_back("s_points must be >= 2");
    if (s_points_2d < 2) bad.emplace_back("s_points_2d must be >= 2");
    if (!(thresholds.tau > 0)) bad.emplace_back("tau must be > 0");
    if (!(thresholds.tau_balance > 0)) bad.emplace_back("tau_balance must be > 0");
    if (!(thresholds.tau_amplitude > 0)) bad.emplace_back("tau_amplitude must be > 0");
    if (!(thresholds.asymmetry > 0)) bad.emplace_back("tau_asymmetry must be > 0");
    if (sweep_points < 1) bad.emplace_back("sweep_points must be >= 1");
    if (sweep_points > 1 && !(sweep_to > sweep_from)) bad.emplace_back("sweep_to must exceed sweep_from");
    return bad;
}

RunConfig parse_config_text(const std::string& text, RunConfig base) {
    std::vector<std::string> problems;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            problems.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        try {
            base.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            for (const auto& p : e.problems()) problems.push_back("line " + std::to_string(lineno) + ": " + p);
        }
    }
    if (!problems.empty()) throw ConfigError(problems);
    return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), std::move(base));
}

void apply_overrides(RunConfig& config, const std::vector<std::string>& overrides) {
    std::vector<std::string> problems;
    for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            problems.push_back("--param '" + kv + "': expected key=value");
            continue;
        }
        try {
            config.set(trim(kv.substr(0, eq)), kv.substr(eq + 1));
        } catch (const ConfigError& e) {
            problems.insert(problems.end(), e.problems().begin(), e.problems().end());
        }
    }
    if (!problems.empty()) throw ConfigError(problems);
}

}  // namespace ptlattice
