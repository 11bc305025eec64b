#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "ptlattice/susceptibility.hpp"

namespace ptlattice {

/// Grating parameters. `R`/`M` describe the x direction; `R_y`/`M_y` are
/// used only for 2D cells (square lattice by default).
struct GratingConfig {
    double L_over_xi{20};  ///< interaction length in units of the absorption length xi
    double R{4};           ///< lattice period over probe wavelength
    int M{5};              ///< illuminated periods
    double R_y{4};
    int M_y{5};

    int max_order_x() const { return static_cast<int>(std::floor(R)); }
    int max_order_y() const { return static_cast<int>(std::floor(R_y)); }
};

/// Complex transmission over one cell, same grid and shape as the
/// susceptibility it came from. |t| > 1 marks gain.
struct TransmissionProfile {
    Eigen::ArrayXd u;
    Eigen::ArrayXd v;
    Eigen::ArrayXXcd t;
    GratingConfig config;

    bool is_2d() const { return v.size() > 0; }
};

/// Far-field intensity on sin(theta) grids. `intensity` is n_sx x n_sy
/// (n_sy = 1 and `s_y` empty in 1D).
struct FarFieldPattern {
    Eigen::ArrayXd s_x;
    Eigen::ArrayXd s_y;
    Eigen::ArrayXXd intensity;

    bool is_2d() const { return s_y.size() > 0; }
};

struct OrderEntry {
    int n_x{0};
    int n_y{0};
    double intensity{0};
};

/// Intensities at the grating orders s = n/R. 1D tables keep n_y = 0.
struct OrderTable {
    std::vector<OrderEntry> entries;
    bool two_d{false};

    /// Intensity of order n (1D) or (n_x, n_y); throws if absent.
    double at(int n_x, int n_y = 0) const;
};

/// t = exp(-Im chi' L/xi) exp(i Re chi' L/xi), element by element.
TransmissionProfile transmission(const SusceptibilityProfile& chi, const GratingConfig& config);

/// Multi-period interference factor sin^2(pi M R s) / (M^2 sin^2(pi R s)).
/// The argument is reduced to the nearest order first, so exact order
/// positions evaluate to 1 and neighbouring points keep full precision.
template <typename Scalar>
Scalar array_factor(Scalar s, Scalar R, int M) {
    const Scalar x = R * s;
    const Scalar eps = std::numbers::pi_v<Scalar> * (x - std::round(x));
    const auto m = static_cast<Scalar>(M);
    if (std::abs(std::sin(eps)) < Scalar(1e-9)) {
        return Scalar(1) - (m * m - Scalar(1)) * eps * eps / Scalar(3);
    }
    const Scalar ratio = std::sin(m * eps) / (m * std::sin(eps));
    return ratio * ratio;
}

/// Rows are composite Simpson kernels for E(s) = int_{-1/2}^{1/2} f(u)
/// exp(-i 2 pi R u s) du on the grid u_k = -1/2 + k/n, closing the period
/// with f(1/2) = f(-1/2).
Eigen::MatrixXcd fourier_kernel(const Eigen::ArrayXd& s, double R, int n);

/// Single-cell diffraction amplitude E(s).
Eigen::VectorXcd amplitude_1d(const TransmissionProfile& t, const Eigen::ArrayXd& s);

/// Single-cell amplitude E(s_x, s_y) as an n_sx x n_sy matrix.
Eigen::MatrixXcd amplitude_2d(const TransmissionProfile& t, const Eigen::ArrayXd& s_x,
                              const Eigen::ArrayXd& s_y);

FarFieldPattern far_field_1d(const TransmissionProfile& t, const Eigen::ArrayXd& s);

FarFieldPattern far_field_2d(const TransmissionProfile& t, const Eigen::ArrayXd& s_x, const Eigen::ArrayXd& s_y);

OrderTable order_intensities(const TransmissionProfile& t);

/// |sum_m |c_m|^2 - int |t|^2| / int |t|^2 with c_m the Fourier
/// coefficients of t over one period.
double parseval_residual(const TransmissionProfile& t);

/// `points` values evenly spaced over [-1, 1] (inclusive).
Eigen::ArrayXd sine_grid(int points);

}  // namespace ptlattice
