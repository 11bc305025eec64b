#pragma once

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "ptlattice/atom_params.hpp"
#include "ptlattice/density_matrix.hpp"

namespace ptlattice {

enum class Dims { oneD, twoD };

/// Standing-wave coupling Omega_s = Omega_s0 + dOmega_s * sin(2 pi u)
/// (plus sin(2 pi v) in 2D). Values may go negative.
struct CouplingProfile {
    double omega_s0{0.001};
    double delta_omega_s{0.05};
    Dims dims{Dims::oneD};
};

/// Gaussian trap half-widths in units of the lattice period.
struct LatticeGeometry {
    double sigma_x{0.2};
    double sigma_y{0.2};
};

/// Normalized susceptibility sampled over one lattice cell on the grid
/// u_k = -1/2 + k/n (and likewise v). `chi` has shape n_u x n_v, with
/// n_v = 1 and `v` empty in 1D.
struct SusceptibilityProfile {
    Eigen::ArrayXd u;
    Eigen::ArrayXd v;
    Eigen::ArrayXXcd chi;
    AtomFieldParams<double> params_used;
    CouplingProfile coupling;
    LatticeGeometry geometry;
    Backend backend{Backend::numeric};

    bool is_2d() const { return v.size() > 0; }
};

double coupling_at(const CouplingProfile& profile, double u, std::optional<double> v = std::nullopt);

/// rho_41 * gamma_41 / Omega_p from the selected backend. Im > 0 is loss,
/// Im < 0 gain.
std::complex<double> chi_normalized(const AtomFieldParams<double>& params, Backend backend);

/// Uniform periodic grid -1/2 + k/n, k = 0..n-1.
Eigen::ArrayXd cell_grid(int n);

bool is_valid_grid_size(int n);

SusceptibilityProfile sample_chi_1d(const AtomFieldParams<double>& params, const CouplingProfile& coupling,
                                    const LatticeGeometry& geometry, int n, Backend backend);

SusceptibilityProfile sample_chi_2d(const AtomFieldParams<double>& params, const CouplingProfile& coupling,
                                    const LatticeGeometry& geometry, int n_x, int n_y, Backend backend);

}  // namespace ptlattice
