#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ptlattice/diffraction.hpp"
#include "ptlattice/susceptibility.hpp"

namespace ptlattice {

/// Distance of a susceptibility profile from n(r) = n*(-r), i.e. from an
/// even real part and an odd imaginary part. All three vanish for an
/// exactly PT-symmetric profile.
struct PTMetrics {
    double d_im_antisym{0};      ///< max |Im(r) + Im(-r)| / max |Im|
    double d_re_sym{0};          ///< max |Re(r) - Re(-r)| / max(max |Re|, 1e-15)
    double gain_loss_balance{0}; ///< |int Im| / int |Im|
    // 2D only: odd-ness of Im under the single-axis reflections u -> -u and v -> -v.
    std::optional<double> d_im_antisym_u;
    std::optional<double> d_im_antisym_v;
};

enum class GratingKind { pt_symmetric, amplitude, phase, mixed };

const char* to_string(GratingKind kind);

struct Thresholds {
    double tau{0.1};            ///< d_im_antisym and d_re_sym bound for PT symmetry
    double tau_balance{0.2};    ///< gain_loss_balance bound for PT symmetry
    double tau_amplitude{0.1};  ///< Re/Im (or Im/Re) ratio below which a grating is pure amplitude (phase)
    double asymmetry{0.5};      ///< |asymmetry| above which a diffraction pattern counts as asymmetric
};

struct GratingClass {
    GratingKind kind{GratingKind::mixed};
    PTMetrics metrics;
    double re_im_ratio{0};
};

PTMetrics pt_metrics(const SusceptibilityProfile& chi);

/// max |Re chi'| / max |Im chi'| (infinite when Im vanishes).
double re_im_ratio(const SusceptibilityProfile& chi);

/// A grating whose modulation is essentially one-sided (Re/Im below
/// tau_amplitude, or the reverse) is classified amplitude or phase first;
/// otherwise it is pt_symmetric when all three metrics are under their
/// bounds, and mixed if not.
GratingClass classify_grating(const PTMetrics& metrics, double re_im_ratio, const Thresholds& thresholds = {});

/// (sum_{n>0} I_n - sum_{n<0} I_n) / max(sum_{n!=0} I_n, 1e-30). In 2D the
/// order index is n_x + n_y, so the diagonal half-planes are compared.
double asymmetry_metric(const OrderTable& orders);

/// Fixed inputs of one 1D pipeline run: sample -> transmit -> orders ->
/// metrics.
struct PipelineConfig {
    AtomFieldParams<double> atom{};
    CouplingProfile coupling{};
    LatticeGeometry geometry{};
    GratingConfig grating{};
    int n{2048};
    Backend backend{Backend::numeric};
    Thresholds thresholds{};
};

struct PipelineResult {
    SusceptibilityProfile chi;
    TransmissionProfile transmission;
    OrderTable orders;
    PTMetrics metrics;
    GratingClass grating_class;
    double asymmetry{0};
};

PipelineResult run_pipeline_1d(const PipelineConfig& config);

enum class SweepParameter { coupling_both, ratio_d_over_c, phase };

const char* to_string(SweepParameter p);
std::optional<SweepParameter> parse_sweep_parameter(const std::string& name);

/// Base config with the swept quantity set to `value`. For ratio_d_over_c
/// the base omega_c is kept and omega_d = value * omega_c.
PipelineConfig apply_sweep_value(const PipelineConfig& base, SweepParameter parameter, double value);

struct SweepRow {
    double value{0};
    std::optional<OrderTable> orders;
    double asymmetry{0};
    std::optional<PTMetrics> metrics;
    std::optional<GratingKind> kind;
    std::string error;  ///< module error name and message; empty on success

    bool ok() const { return error.empty(); }
};

struct SweepTable {
    SweepParameter parameter{SweepParameter::phase};
    std::vector<SweepRow> rows;
};

/// One pipeline run per value, in input order. Numerical errors are
/// recorded in the row and the sweep continues.
SweepTable sweep(const PipelineConfig& base, SweepParameter parameter, std::span<const double> values);

}  // namespace ptlattice
