#pragma once

#include <algorithm>
#include <complex>

#include "ptlattice/atom_params.hpp"
#include "ptlattice/density_matrix.hpp"
#include "ptlattice/errors.hpp"

namespace ptlattice {

/// Closed-form steady-state rho_41, valid for zero one-photon detunings,
/// equal decay rates, and weak probe and standing-wave fields.
template <typename Scalar>
std::complex<Scalar> rho41_analytic(const AtomFieldParams<Scalar>& p) {
    using C = std::complex<Scalar>;
    require_steady_state_domain(p);
    if (!p.all_detunings_zero() || !p.equal_decay_rates()) {
        throw InvalidArgument("closed-form rho_41 requires zero detunings and equal decay rates");
    }

    const C e = std::polar(Scalar(1), p.phi);
    const C e2 = e * e;
    const C e3 = e2 * e;
    const Scalar wp = p.omega_p, ws = p.omega_s, wc = p.omega_c, wd = p.omega_d;
    const Scalar wc2 = wc * wc, wc3 = wc2 * wc, wd2 = wd * wd, wd3 = wd2 * wd;

    const C a = C(0, 1) * e2 * (wc * wd2) * (-wc2 * wp + e * (wc * wd * ws) + 2 * wp * ws * ws);
    const C b = -2 * wc3 * wp * wp + e * (5 * wc2 * wd * wp * ws);
    const C c = e3 * (wc * wd) * (wc2 * wd + wd3 + wc * wp * ws + 2 * wd * ws * ws);
    const C d = Scalar(-2) * e2 * (wc3 * wp * wp - 2 * wd3 * wp * ws + wc * wd2 * ws * ws);

    const C denom = b + c + d;
    if (std::abs(denom) < Scalar(1e-14)) {
        throw DegenerateDenominator("|B + C + D| < 1e-14 (omega_c or omega_d vanishing?)");
    }
    return -a / (Scalar(2) * p.gamma_41 * denom);
}

template <typename Scalar = double>
struct AnalyticValidation {
    std::complex<Scalar> rho41_numeric;
    std::complex<Scalar> rho41_analytic;
    Scalar rel_error{0};
};

/// Cross-check of the closed form against the full linear solve. When both
/// values are below 1e-15 the relative error is defined as 0.
template <typename Scalar>
AnalyticValidation<Scalar> validate_analytic(const AtomFieldParams<Scalar>& p) {
    const auto closed = rho41_analytic(p);
    const auto numeric = steady_state(p).rho.at(4, 1);
    const Scalar floor = Scalar(1e-15);
    Scalar rel = 0;
    if (std::max(std::abs(numeric), std::abs(closed)) >= floor) {
        rel = std::abs(numeric - closed) / std::max(std::abs(numeric), floor);
    }
    return {numeric, closed, rel};
}

}  // namespace ptlattice
