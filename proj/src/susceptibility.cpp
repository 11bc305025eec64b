#include "ptlattice/susceptibility.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "ptlattice/analytic.hpp"
#include "ptlattice/errors.hpp"

namespace ptlattice {

namespace {

void require_grid(int n, const char* what) {
    if (!is_valid_grid_size(n)) {
        throw InvalidArgument(std::string(what) + " must be a power of two >= 64, got " + std::to_string(n));
    }
}

void require_geometry(double sigma, const char* what) {
    if (!(sigma > 0 && sigma <= 1)) throw InvalidArgument(std::string(what) + " must lie in (0, 1]");
}

std::string point_context(const AtomFieldParams<double>& p, double u, std::optional<double> v) {
    std::ostringstream os;
    os << "u = " << u;
    if (v) os << ", v = " << *v;
    os << ", omega_p = " << p.omega_p << ", omega_s = " << p.omega_s << ", omega_c = " << p.omega_c
       << ", omega_d = " << p.omega_d << ", phi = " << p.phi;
    return os.str();
}

}  // namespace

double coupling_at(const CouplingProfile& profile, double u, std::optional<double> v) {
    constexpr double two_pi = 2 * std::numbers::pi;
    if (profile.dims == Dims::twoD) {
        if (!v) throw InvalidArgument("2D coupling profile needs a v coordinate");
        return profile.omega_s0 + profile.delta_omega_s * (std::sin(two_pi * u) + std::sin(two_pi * *v));
    }
    if (v) throw InvalidArgument("1D coupling profile takes no v coordinate");
    return profile.omega_s0 + profile.delta_omega_s * std::sin(two_pi * u);
}

std::complex<double> chi_normalized(const AtomFieldParams<double>& params, Backend backend) {
    if (!(params.omega_p > 0)) throw InvalidArgument("chi_normalized requires omega_p > 0");
    const std::complex<double> rho41 =
        backend == Backend::analytic ? rho41_analytic(params) : steady_state(params).rho.at(4, 1);
    return rho41 * params.gamma_41 / params.omega_p;
}

bool is_valid_grid_size(int n) { return n >= 64 && (n & (n - 1)) == 0; }

Eigen::ArrayXd cell_grid(int n) {
    return Eigen::ArrayXd::LinSpaced(n, 0, n - 1) / static_cast<double>(n) - 0.5;
}

SusceptibilityProfile sample_chi_1d(const AtomFieldParams<double>& params, const CouplingProfile& coupling,
                                    const LatticeGeometry& geometry, int n, Backend backend) {
    require_grid(n, "grid size n");
    require_geometry(geometry.sigma_x, "sigma");

    CouplingProfile line = coupling;
    line.dims = Dims::oneD;

    SusceptibilityProfile out;
    out.u = cell_grid(n);
    out.chi.resize(n, 1);
    out.params_used = params;
    out.coupling = line;
    out.geometry = geometry;
    out.backend = backend;

    const double inv_s2 = 1.0 / (geometry.sigma_x * geometry.sigma_x);
    AtomFieldParams<double> local = params;
    for (int k = 0; k < n; ++k) {
        const double u = out.u(k);
        local.omega_s = coupling_at(line, u);
        try {
            out.chi(k, 0) = chi_normalized(local, backend) * std::exp(-u * u * inv_s2);
        } catch (NumericalError& e) {
            e.add_context(point_context(local, u, std::nullopt));
            throw;
        }
    }
    return out;
}

SusceptibilityProfile sample_chi_2d(const AtomFieldParams<double>& params, const CouplingProfile& coupling,
                                    const LatticeGeometry& geometry, int n_x, int n_y, Backend backend) {
    require_grid(n_x, "grid size n_x");
    require_grid(n_y, "grid size n_y");
    require_geometry(geometry.sigma_x, "sigma_x");
    require_geometry(geometry.sigma_y, "sigma_y");

    CouplingProfile cell = coupling;
    cell.dims = Dims::twoD;

    SusceptibilityProfile out;
    out.u = cell_grid(n_x);
    out.v = cell_grid(n_y);
    out.chi.resize(n_x, n_y);
    out.params_used = params;
    out.coupling = cell;
    out.geometry = geometry;
    out.backend = backend;

    const double inv_sx2 = 1.0 / (geometry.sigma_x * geometry.sigma_x);
    const double inv_sy2 = 1.0 / (geometry.sigma_y * geometry.sigma_y);
    AtomFieldParams<double> local = params;
    for (int l = 0; l < n_y; ++l) {
        const double v = out.v(l);
        for (int k = 0; k < n_x; ++k) {
            const double u = out.u(k);
            local.omega_s = coupling_at(cell, u, v);
            try {
                out.chi(k, l) = chi_normalized(local, backend) * std::exp(-u * u * inv_sx2 - v * v * inv_sy2);
            } catch (NumericalError& e) {
                e.add_context(point_context(local, u, v));
                throw;
            }
        }
    }
    return out;
}

}  // namespace ptlattice
