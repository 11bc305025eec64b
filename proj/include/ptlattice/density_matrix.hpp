#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "ptlattice/atom_params.hpp"
#include "ptlattice/errors.hpp"

namespace ptlattice {

enum class Backend { numeric, analytic };

inline const char* to_string(Backend b) { return b == Backend::numeric ? "numeric" : "analytic"; }

template <typename Scalar>
using Matrix4c = Eigen::Matrix<std::complex<Scalar>, 4, 4>;
template <typename Scalar>
using Matrix16c = Eigen::Matrix<std::complex<Scalar>, 16, 16>;
template <typename Scalar>
using Vector16c = Eigen::Matrix<std::complex<Scalar>, 16, 1>;

/// 4x4 density matrix. `at(i, j)` uses the physical level labels 1..4;
/// `matrix()` exposes the 0-based Eigen storage.
template <typename Scalar = double>
class DensityMatrix {
public:
    DensityMatrix() : rho_(Matrix4c<Scalar>::Zero()) {}
    explicit DensityMatrix(const Matrix4c<Scalar>& rho) : rho_(rho) {}

    static DensityMatrix ground(int level = 1) {
        Matrix4c<Scalar> m = Matrix4c<Scalar>::Zero();
        m(level - 1, level - 1) = 1;
        return DensityMatrix(m);
    }

    std::complex<Scalar> at(int i, int j) const { return rho_(i - 1, j - 1); }
    const Matrix4c<Scalar>& matrix() const { return rho_; }

    std::complex<Scalar> trace() const { return rho_.trace(); }
    Scalar hermiticity_error() const { return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff(); }

    /// Row-major vectorization: element (i, j) lives at 4*i + j.
    Vector16c<Scalar> vectorized() const {
        Vector16c<Scalar> v;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) v(4 * i + j) = rho_(i, j);
        return v;
    }

    static DensityMatrix from_vectorized(const Vector16c<Scalar>& v) {
        Matrix4c<Scalar> m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = v(4 * i + j);
        return DensityMatrix(m);
    }

private:
    Matrix4c<Scalar> rho_;
};

template <typename Scalar>
Scalar max_abs_difference(const DensityMatrix<Scalar>& a, const DensityMatrix<Scalar>& b) {
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

/// Complex probe Rabi frequency as it enters the rotating-frame equations
/// at multiphoton resonance. The closed-loop phase rides on the probe with
/// sign e^{-i phi}; this is the sign for which the closed-form rho_41 and
/// the full linear solve agree.
template <typename Scalar>
std::complex<Scalar> probe_rabi(const AtomFieldParams<Scalar>& p) {
    return std::polar(p.omega_p, -p.phi);
}

/// Interaction-picture Hamiltonian (hbar = 1) at Delta = 0.
template <typename Scalar>
Matrix4c<Scalar> interaction_hamiltonian(const AtomFieldParams<Scalar>& p) {
    Matrix4c<Scalar> v = Matrix4c<Scalar>::Zero();
    v(1, 1) = p.delta_c - p.delta_s;
    v(2, 2) = -p.delta_s;
    v(3, 3) = p.delta_c - p.delta_s - p.delta_d;
    v(2, 0) = -p.omega_s;
    v(2, 1) = -p.omega_c;
    v(3, 1) = -p.omega_d;
    v(3, 0) = -probe_rabi(p);
    v(0, 2) = std::conj(v(2, 0));
    v(1, 2) = std::conj(v(2, 1));
    v(1, 3) = std::conj(v(3, 1));
    v(0, 3) = std::conj(v(3, 0));
    return v;
}

/// Generator L of d vec(rho)/dt = L vec(rho): coherent part -i[V, rho]
/// plus spontaneous decay 2*gamma_ij out of the excited populations and
/// the dephasing rates Gamma_ij on the optical coherences. The 1-2 ground
/// coherence carries no damping.
template <typename Scalar>
Matrix16c<Scalar> liouvillian(const AtomFieldParams<Scalar>& p) {
    using C = std::complex<Scalar>;
    const C minus_i(0, -1);
    const Matrix4c<Scalar> v = interaction_hamiltonian(p);
    Matrix16c<Scalar> l = Matrix16c<Scalar>::Zero();
    auto idx = [](int i, int j) { return 4 * i + j; };

    // vec(V rho) = (V (x) I) vec(rho); vec(rho V) = (I (x) V^T) vec(rho)
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                l(idx(i, j), idx(k, j)) += minus_i * v(i, k);
                l(idx(i, j), idx(i, k)) -= minus_i * v(k, j);
            }

    auto dephase = [&](int a, int b, Scalar rate) {
        l(idx(a, b), idx(a, b)) -= rate;
        l(idx(b, a), idx(b, a)) -= rate;
    };
    dephase(2, 0, p.dephasing_31());
    dephase(2, 1, p.dephasing_32());
    dephase(3, 0, p.dephasing_41());
    dephase(3, 1, p.dephasing_42());
    dephase(3, 2, p.dephasing_43());

    l(idx(0, 0), idx(2, 2)) += 2 * p.gamma_31;
    l(idx(0, 0), idx(3, 3)) += 2 * p.gamma_41;
    l(idx(1, 1), idx(2, 2)) += 2 * p.gamma_32;
    l(idx(1, 1), idx(3, 3)) += 2 * p.gamma_42;
    l(idx(2, 2), idx(2, 2)) -= 2 * (p.gamma_31 + p.gamma_32);
    l(idx(3, 3), idx(3, 3)) -= 2 * (p.gamma_41 + p.gamma_42);
    return l;
}

/// Max-norm of the time derivative at `rho`, i.e. how far `rho` is from
/// being stationary (units of gamma).
template <typename Scalar>
Scalar stationarity_residual(const AtomFieldParams<Scalar>& p, const DensityMatrix<Scalar>& rho) {
    return (liouvillian(p) * rho.vectorized()).cwiseAbs().maxCoeff();
}

template <typename Scalar = double>
struct SteadyStateReport {
    DensityMatrix<Scalar> rho;
    Scalar residual_norm{0};
    Backend backend{Backend::numeric};
};

inline constexpr double kSteadyStateResidualTolerance = 1e-9;

/// 1e-9 for double; narrower scalar types cannot reach that, so the bound
/// is floored at 100 ulp.
template <typename Scalar>
constexpr Scalar steady_state_tolerance() {
    return std::max(Scalar(kSteadyStateResidualTolerance), Scalar(100) * std::numeric_limits<Scalar>::epsilon());
}

/// Steady state by direct solve of the 16x16 system, with the rho_11
/// equation (redundant by trace conservation) replaced by trace(rho) = 1.
template <typename Scalar>
SteadyStateReport<Scalar> steady_state(const AtomFieldParams<Scalar>& p) {
    require_steady_state_domain(p);
    if (p.omega_p == 0 && p.omega_s == 0 && (p.omega_c == 0 || p.omega_d == 0)) {
        throw SingularSystem(
            "steady state is not unique: omega_p = omega_s = 0 with omega_c or omega_d = 0 "
            "leaves two dark ground levels");
    }

    const Matrix16c<Scalar> l = liouvillian(p);
    Matrix16c<Scalar> a = l;
    Vector16c<Scalar> b = Vector16c<Scalar>::Zero();
    a.row(0).setZero();
    for (int i = 0; i < 4; ++i) a(0, 5 * i) = 1;
    b(0) = 1;

    Eigen::FullPivLU<Matrix16c<Scalar>> lu(a);
    if (lu.rank() < 16) {
        std::ostringstream os;
        os << "Liouvillian with trace constraint has rank " << lu.rank() << " < 16";
        throw SingularSystem(os.str());
    }
    DensityMatrix<Scalar> raw = DensityMatrix<Scalar>::from_vectorized(lu.solve(b));
    DensityMatrix<Scalar> rho(Scalar(0.5) * (raw.matrix() + raw.matrix().adjoint()));

    const Scalar residual = (l * rho.vectorized()).cwiseAbs().maxCoeff();
    if (!(residual <= steady_state_tolerance<Scalar>())) {
        std::ostringstream os;
        os << "steady-state residual " << residual << " exceeds " << steady_state_tolerance<Scalar>();
        throw NonConvergent(os.str());
    }
    return {rho, residual, Backend::numeric};
}

/// Classical fourth-order Runge-Kutta propagation of the Liouville
/// equations. For a linear generator one RK4 step is the matrix
/// polynomial I + hL + (hL)^2/2 + (hL)^3/6 + (hL)^4/24, which is built
/// once. The step is shrunk so that an integer number of steps lands
/// exactly on t_end.
template <typename Scalar>
DensityMatrix<Scalar> evolve(const AtomFieldParams<Scalar>& p, const DensityMatrix<Scalar>& rho0,
                             Scalar t_end, Scalar dt = Scalar(0.01)) {
    require_steady_state_domain(p);
    if (!(t_end >= 0) || !std::isfinite(t_end)) throw InvalidArgument("t_end must be finite and >= 0");
    if (!(dt > 0) || !std::isfinite(dt)) throw InvalidArgument("dt must be finite and > 0");
    if (t_end == 0) return rho0;

    const auto steps = static_cast<long>(std::max<Scalar>(1, std::ceil(t_end / dt - Scalar(1e-9))));
    const Scalar h = t_end / static_cast<Scalar>(steps);

    const Matrix16c<Scalar> hl = h * liouvillian(p);
    Matrix16c<Scalar> step = Matrix16c<Scalar>::Identity();
    Matrix16c<Scalar> term = Matrix16c<Scalar>::Identity();
    for (int k = 1; k <= 4; ++k) {
        term = (term * hl / Scalar(k)).eval();
        step += term;
    }

    Vector16c<Scalar> x = rho0.vectorized();
    for (long n = 0; n < steps; ++n) {
        x = step * x;
        for (int i = 0; i < 4; ++i) {
            const Scalar pop = x(5 * i).real();
            if (!(pop >= Scalar(-0.01) && pop <= Scalar(1.01))) {
                std::ostringstream os;
                os << "population rho_" << i + 1 << i + 1 << " = " << pop << " at t = "
                   << h * static_cast<Scalar>(n + 1) << " (dt = " << h << ")";
                throw StepUnstable(os.str());
            }
        }
    }
    return DensityMatrix<Scalar>::from_vectorized(x);
}

}  // namespace ptlattice
