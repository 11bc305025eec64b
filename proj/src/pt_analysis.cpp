#include "ptlattice/pt_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ptlattice/errors.hpp"

namespace ptlattice {

namespace {

// Index of -u on the periodic grid u_k = -1/2 + k/n; u = -1/2 maps to itself.
Eigen::Index mirror(Eigen::Index k, Eigen::Index n) { return (n - k) % n; }

double max_pair_mismatch(const Eigen::ArrayXXd& a, double sign, bool flip_u, bool flip_v) {
    const Eigen::Index nu = a.rows(), nv = a.cols();
    double worst = 0;
    for (Eigen::Index l = 0; l < nv; ++l) {
        const Eigen::Index lm = flip_v ? mirror(l, nv) : l;
        for (Eigen::Index k = 0; k < nu; ++k) {
            const Eigen::Index km = flip_u ? mirror(k, nu) : k;
            worst = std::max(worst, std::abs(a(k, l) + sign * a(km, lm)));
        }
    }
    return worst;
}

}  // namespace

const char* to_string(GratingKind kind) {
    switch (kind) {
        case GratingKind::pt_symmetric: return "pt_symmetric";
        case GratingKind::amplitude: return "amplitude";
        case GratingKind::phase: return "phase";
        case GratingKind::mixed: return "mixed";
    }
    return "mixed";
}

PTMetrics pt_metrics(const SusceptibilityProfile& chi) {
    const Eigen::ArrayXXd im = chi.chi.imag();
    const Eigen::ArrayXXd re = chi.chi.real();
    const double max_im = im.abs().maxCoeff();
    if (max_im < 1e-15) throw DegenerateProfile("max |Im chi'| < 1e-15");
    const double max_re = std::max(re.abs().maxCoeff(), 1e-15);
    const bool two_d = chi.is_2d();

    PTMetrics m;
    m.d_im_antisym = max_pair_mismatch(im, +1, true, two_d) / max_im;
    m.d_re_sym = max_pair_mismatch(re, -1, true, two_d) / max_re;
    m.gain_loss_balance = std::abs(im.sum()) / im.abs().sum();
    if (two_d) {
        m.d_im_antisym_u = max_pair_mismatch(im, +1, true, false) / max_im;
        m.d_im_antisym_v = max_pair_mismatch(im, +1, false, true) / max_im;
    }
    return m;
}

double re_im_ratio(const SusceptibilityProfile& chi) {
    const double max_im = chi.chi.imag().abs().maxCoeff();
    const double max_re = chi.chi.real().abs().maxCoeff();
    if (max_im == 0) return max_re == 0 ? 0 : std::numeric_limits<double>::infinity();
    return max_re / max_im;
}

GratingClass classify_grating(const PTMetrics& metrics, double ratio, const Thresholds& th) {
    if (!(th.tau > 0 && th.tau_balance > 0 && th.tau_amplitude > 0)) {
        throw InvalidArgument("classification thresholds must be positive");
    }
    GratingClass out{GratingKind::mixed, metrics, ratio};
    if (ratio < th.tau_amplitude) {
        out.kind = GratingKind::amplitude;
    } else if (1.0 / ratio < th.tau_amplitude) {
        out.kind = GratingKind::phase;
    } else if (metrics.d_im_antisym < th.tau && metrics.d_re_sym < th.tau &&
               metrics.gain_loss_balance < th.tau_balance) {
        out.kind = GratingKind::pt_symmetric;
    }
    return out;
}

double asymmetry_metric(const OrderTable& orders) {
    // Accumulated per |n| so that reflecting the table negates the result bit for bit.
    std::map<int, std::pair<double, double>> by_order;
    for (const auto& e : orders.entries) {
        const int n = e.n_x + e.n_y;
        if (n > 0) by_order[n].first += e.intensity;
        if (n < 0) by_order[-n].second += e.intensity;
    }
    double diff = 0, total = 0;
    for (const auto& [n, pn] : by_order) {
        diff += pn.first - pn.second;
        total += pn.first + pn.second;
    }
    return diff / std::max(total, 1e-30);
}

PipelineResult run_pipeline_1d(const PipelineConfig& config) {
    PipelineResult r;
    r.chi = sample_chi_1d(config.atom, config.coupling, config.geometry, config.n, config.backend);
    r.transmission = transmission(r.chi, config.grating);
    r.orders = order_intensities(r.transmission);
    r.metrics = pt_metrics(r.chi);
    r.grating_class = classify_grating(r.metrics, re_im_ratio(r.chi), config.thresholds);
    r.asymmetry = asymmetry_metric(r.orders);
    return r;
}

const char* to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::coupling_both: return "coupling_both";
        case SweepParameter::ratio_d_over_c: return "ratio_d_over_c";
        case SweepParameter::phase: return "phase";
    }
    return "phase";
}

std::optional<SweepParameter> parse_sweep_parameter(const std::string& name) {
    if (name == "coupling_both") return SweepParameter::coupling_both;
    if (name == "ratio_d_over_c") return SweepParameter::ratio_d_over_c;
    if (name == "phase") return SweepParameter::phase;
    return std::nullopt;
}

PipelineConfig apply_sweep_value(const PipelineConfig& base, SweepParameter parameter, double value) {
    PipelineConfig c = base;
    switch (parameter) {
        case SweepParameter::coupling_both:
            c.atom.omega_c = value;
            c.atom.omega_d = value;
            break;
        case SweepParameter::ratio_d_over_c: c.atom.omega_d = value * base.atom.omega_c; break;
        case SweepParameter::phase: c.atom.phi = value; break;
    }
    return c;
}

SweepTable sweep(const PipelineConfig& base, SweepParameter parameter, std::span<const double> values) {
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) throw InvalidArgument("sweep values must be strictly increasing");
    }
    SweepTable table;
    table.parameter = parameter;
    table.rows.reserve(values.size());
    for (const double value : values) {
        SweepRow row;
        row.value = value;
        try {
            const PipelineResult r = run_pipeline_1d(apply_sweep_value(base, parameter, value));
            row.orders = r.orders;
            row.asymmetry = r.asymmetry;
            row.metrics = r.metrics;
            row.kind = r.grating_class.kind;
        } catch (const NumericalError& e) {
            row.error = e.what();
        } catch (const InvalidArgument& e) {
            row.error = std::string("InvalidArgument: ") + e.what();
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace ptlattice
