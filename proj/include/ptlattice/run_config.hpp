#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ptlattice/pt_analysis.hpp"

namespace ptlattice {

enum class OutputFormat { csv, json, both };

/// Every configuration problem found in one pass, one message per key.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

/// Fully resolved run configuration. Defaults are the reference lattice
/// at phi = 3pi/2.
struct RunConfig {
    AtomFieldParams<double> atom{.omega_p = 0.05, .omega_s = 0, .omega_c = 2, .omega_d = 2,
                                 .phi = 1.5 * std::numbers::pi};
    CouplingProfile coupling{};
    double sigma{0.2};
    std::optional<double> sigma_x, sigma_y;
    double L_over_xi{20};
    double R{4};
    int M{5};
    std::optional<double> R_x, R_y;
    std::optional<int> M_x, M_y;
    int n{2048};
    int n_x{256};
    int n_y{256};
    int s_points{801};
    int s_points_2d{201};
    Backend backend{Backend::numeric};
    Thresholds thresholds{};
    SweepParameter sweep_parameter{SweepParameter::coupling_both};
    double sweep_from{0.01};
    double sweep_to{3};
    int sweep_points{60};
    std::string out{"."};
    OutputFormat format{OutputFormat::csv};

    LatticeGeometry geometry_1d() const { return {sigma, sigma}; }
    LatticeGeometry geometry_2d() const { return {sigma_x.value_or(sigma), sigma_y.value_or(sigma)}; }
    GratingConfig grating_1d() const { return {L_over_xi, R, M, R, M}; }
    GratingConfig grating_2d() const {
        return {L_over_xi, R_x.value_or(R), M_x.value_or(M), R_y.value_or(R), M_y.value_or(M)};
    }
    PipelineConfig pipeline_1d() const;

    /// Sweep values evenly spaced over [sweep_from, sweep_to].
    std::vector<double> sweep_values() const;

    /// Sets one key from its text form; throws ConfigError on an unknown
    /// key or unparsable value.
    void set(const std::string& key, const std::string& value);

    /// All keys with their resolved values, in a fixed order. This is the
    /// parameter header written into every output file.
    std::vector<std::pair<std::string, std::string>> entries() const;

    /// Problems with the resolved values (empty when valid).
    std::vector<std::string> validate() const;
};

/// Parses a flat `key = value` document (`#` starts a comment). Every bad
/// line is reported.
RunConfig parse_config_text(const std::string& text, RunConfig base = {});

RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Applies `key=value` overrides in order.
void apply_overrides(RunConfig& config, const std::vector<std::string>& overrides);

/// Accepts radians ("4.712") or multiples of pi ("1.5pi", "pi", "-0.5pi").
std::optional<double> parse_phase(const std::string& text);

}  // namespace ptlattice
