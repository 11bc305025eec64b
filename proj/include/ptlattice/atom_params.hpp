#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ptlattice/errors.hpp"

namespace ptlattice {

/// Field and decay parameters of the closed-loop double-lambda atom.
///
/// Levels are numbered 1..4: |1>,|2> ground, |3>,|4> excited. The probe
/// drives 1-4, the standing wave 1-3, and the couplings 2-3 (omega_c) and
/// 2-4 (omega_d). All rates and Rabi frequencies are in units of gamma.
template <typename Scalar = double>
struct AtomFieldParams {
    Scalar omega_p{0.05};
    Scalar omega_s{0};  ///< signed: a negative value is a pi phase on the standing wave
    Scalar omega_c{2};
    Scalar omega_d{2};
    Scalar phi{0};  ///< closed-loop phase (radians)

    Scalar delta_s{0};
    Scalar delta_p{0};
    Scalar delta_c{0};
    Scalar delta_d{0};

    Scalar gamma_31{1};
    Scalar gamma_32{1};
    Scalar gamma_41{1};
    Scalar gamma_42{1};

    Scalar multiphoton_detuning() const { return (delta_p + delta_c) - (delta_s + delta_d); }

    // Total coherence dephasing rates. Gamma_32 equals Gamma_31, and Gamma_42
    // includes gamma_31.
    Scalar dephasing_31() const { return gamma_31 + gamma_32; }
    Scalar dephasing_32() const { return gamma_31 + gamma_32; }
    Scalar dephasing_41() const { return gamma_41 + gamma_42; }
    Scalar dephasing_42() const { return gamma_31 + gamma_41 + gamma_42; }
    Scalar dephasing_43() const { return gamma_31 + gamma_32 + gamma_41 + gamma_42; }

    bool all_detunings_zero() const {
        return delta_s == 0 && delta_p == 0 && delta_c == 0 && delta_d == 0;
    }
    bool equal_decay_rates() const {
        return gamma_31 == gamma_32 && gamma_31 == gamma_41 && gamma_31 == gamma_42;
    }
};

/// Lists every violated invariant; empty when the parameters are usable.
template <typename Scalar>
std::vector<std::string> violations(const AtomFieldParams<Scalar>& p) {
    using std::isfinite;
    std::vector<std::string> out;
    auto rabi = [&](const char* key, Scalar v) {
        if (!isfinite(v) || v < 0) out.push_back(std::string(key) + " must be finite and >= 0");
    };
    rabi("omega_p", p.omega_p);
    rabi("omega_c", p.omega_c);
    rabi("omega_d", p.omega_d);
    if (!isfinite(p.omega_s)) out.emplace_back("omega_s must be finite");
    if (!isfinite(p.phi)) out.emplace_back("phi must be finite");
    auto rate = [&](const char* key, Scalar v) {
        if (!isfinite(v) || !(v > 0)) out.push_back(std::string(key) + " must be finite and > 0");
    };
    rate("gamma_31", p.gamma_31);
    rate("gamma_32", p.gamma_32);
    rate("gamma_41", p.gamma_41);
    rate("gamma_42", p.gamma_42);
    for (auto [key, v] : {std::pair{"delta_s", p.delta_s}, std::pair{"delta_p", p.delta_p},
                          std::pair{"delta_c", p.delta_c}, std::pair{"delta_d", p.delta_d}}) {
        if (!isfinite(v)) out.push_back(std::string(key) + " must be finite");
    }
    if (p.multiphoton_detuning() != 0) {
        out.emplace_back("multiphoton detuning (delta_p + delta_c) - (delta_s + delta_d) must be 0");
    }
    return out;
}

template <typename Scalar>
void require_steady_state_domain(const AtomFieldParams<Scalar>& p) {
    auto v = violations(p);
    if (v.empty()) return;
    std::string msg = "invalid atom parameters:";
    for (const auto& s : v) msg += " " + s + ";";
    throw InvalidArgument(msg);
}

}  // namespace ptlattice
