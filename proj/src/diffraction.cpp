#include "ptlattice/diffraction.hpp"

#include <sstream>
#include <string>

#include "ptlattice/errors.hpp"

namespace ptlattice {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kMaxExponent = 700;

void require_grating(const GratingConfig& c, bool two_d) {
    if (!(c.L_over_xi > 0) || !std::isfinite(c.L_over_xi)) throw InvalidArgument("L_over_xi must be > 0");
    if (!(c.R > 0) || !std::isfinite(c.R)) throw InvalidArgument("R must be > 0");
    if (c.M < 1) throw InvalidArgument("M must be >= 1");
    if (two_d) {
        if (!(c.R_y > 0) || !std::isfinite(c.R_y)) throw InvalidArgument("R_y must be > 0");
        if (c.M_y < 1) throw InvalidArgument("M_y must be >= 1");
    }
}

}  // namespace

double OrderTable::at(int n_x, int n_y) const {
    for (const auto& e : entries) {
        if (e.n_x == n_x && e.n_y == n_y) return e.intensity;
    }
    throw InvalidArgument("order (" + std::to_string(n_x) + ", " + std::to_string(n_y) + ") not in table");
}

TransmissionProfile transmission(const SusceptibilityProfile& chi, const GratingConfig& config) {
    require_grating(config, chi.is_2d());
    const double scale = config.L_over_xi;
    for (Eigen::Index l = 0; l < chi.chi.cols(); ++l) {
        for (Eigen::Index k = 0; k < chi.chi.rows(); ++k) {
            const double exponent = std::abs(chi.chi(k, l).imag()) * scale;
            if (!(exponent <= kMaxExponent)) {
                std::ostringstream os;
                os << "|Im chi'| L/xi = " << exponent << " > " << kMaxExponent << " at sample (" << k << ", " << l
                   << "), u = " << chi.u(k);
                throw Overflow(os.str());
            }
        }
    }
    TransmissionProfile out;
    out.u = chi.u;
    out.v = chi.v;
    out.config = config;
    out.t = (-chi.chi.imag() * scale).exp() * (std::complex<double>(0, 1) * chi.chi.real() * scale).exp();
    return out;
}

Eigen::MatrixXcd fourier_kernel(const Eigen::ArrayXd& s, double R, int n) {
    const double h = 1.0 / n;
    Eigen::MatrixXcd k(s.size(), n);
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        for (int j = 1; j < n; ++j) {
            const double u = static_cast<double>(j) / n - 0.5;
            k(i, j) = std::polar((j % 2 ? 4 : 2) * h / 3, -kTwoPi * R * u * s(i));
        }
        // End nodes u = -1/2 and u = +1/2 share the sample f(-1/2).
        k(i, 0) = 2 * h / 3 * std::cos(std::numbers::pi * R * s(i));
    }
    return k;
}

Eigen::VectorXcd amplitude_1d(const TransmissionProfile& t, const Eigen::ArrayXd& s) {
    if (t.is_2d()) throw InvalidArgument("amplitude_1d needs a 1D transmission profile");
    return fourier_kernel(s, t.config.R, static_cast<int>(t.u.size())) * t.t.matrix().col(0);
}

Eigen::MatrixXcd amplitude_2d(const TransmissionProfile& t, const Eigen::ArrayXd& s_x,
                              const Eigen::ArrayXd& s_y) {
    if (!t.is_2d()) throw InvalidArgument("amplitude_2d needs a 2D transmission profile");
    const Eigen::MatrixXcd kx = fourier_kernel(s_x, t.config.R, static_cast<int>(t.u.size()));
    const Eigen::MatrixXcd ky = fourier_kernel(s_y, t.config.R_y, static_cast<int>(t.v.size()));
    return kx * t.t.matrix() * ky.transpose();
}

FarFieldPattern far_field_1d(const TransmissionProfile& t, const Eigen::ArrayXd& s) {
    const Eigen::VectorXcd e = amplitude_1d(t, s);
    FarFieldPattern out;
    out.s_x = s;
    out.intensity.resize(s.size(), 1);
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        out.intensity(i, 0) = std::norm(e(i)) * array_factor(s(i), t.config.R, t.config.M);
    }
    return out;
}

FarFieldPattern far_field_2d(const TransmissionProfile& t, const Eigen::ArrayXd& s_x, const Eigen::ArrayXd& s_y) {
    const Eigen::MatrixXcd e = amplitude_2d(t, s_x, s_y);
    Eigen::ArrayXd fx(s_x.size()), fy(s_y.size());
    for (Eigen::Index i = 0; i < s_x.size(); ++i) fx(i) = array_factor(s_x(i), t.config.R, t.config.M);
    for (Eigen::Index j = 0; j < s_y.size(); ++j) fy(j) = array_factor(s_y(j), t.config.R_y, t.config.M_y);

    FarFieldPattern out;
    out.s_x = s_x;
    out.s_y = s_y;
    out.intensity = e.cwiseAbs2().array() * (fx.matrix() * fy.matrix().transpose()).array();
    return out;
}

OrderTable order_intensities(const TransmissionProfile& t) {
    OrderTable table;
    table.two_d = t.is_2d();
    const int nx = t.config.max_order_x();
    Eigen::ArrayXd sx(2 * nx + 1);
    for (int n = -nx; n <= nx; ++n) sx(n + nx) = n / t.config.R;

    if (!t.is_2d()) {
        const Eigen::VectorXcd e = amplitude_1d(t, sx);
        for (int n = -nx; n <= nx; ++n) table.entries.push_back({n, 0, std::norm(e(n + nx))});
        return table;
    }
    const int ny = t.config.max_order_y();
    Eigen::ArrayXd sy(2 * ny + 1);
    for (int n = -ny; n <= ny; ++n) sy(n + ny) = n / t.config.R_y;
    const Eigen::MatrixXcd e = amplitude_2d(t, sx, sy);
    for (int a = -nx; a <= nx; ++a)
        for (int b = -ny; b <= ny; ++b) table.entries.push_back({a, b, std::norm(e(a + nx, b + ny))});
    return table;
}

double parseval_residual(const TransmissionProfile& t) {
    if (t.is_2d()) throw InvalidArgument("parseval_residual is defined for 1D profiles");
    const int n = static_cast<int>(t.u.size());
    const Eigen::VectorXcd f = t.t.matrix().col(0);
    const double power = f.squaredNorm() / n;

    // Harmonic m of the unit period is E(s) at R = 1, s = m.
    auto coeff2 = [&](int m) {
        Eigen::ArrayXd s(1);
        s(0) = m;
        return std::norm((fourier_kernel(s, 1.0, n) * f)(0));
    };

    double total = coeff2(0);
    int quiet = 0;
    for (int m = 1; m < n / 2; ++m) {
        const double increment = coeff2(m) + coeff2(-m);
        total += increment;
        quiet = increment < 1e-14 * power ? quiet + 1 : 0;
        if (quiet == 2) break;
    }
    return std::abs(total - power) / power;
}

Eigen::ArrayXd sine_grid(int points) {
    if (points < 2) throw InvalidArgument("s_points must be >= 2");
    Eigen::ArrayXd s(points);
    for (int i = 0; i < points; ++i) s(i) = static_cast<double>(2 * i - (points - 1)) / (points - 1);
    return s;
}

}  // namespace ptlattice
