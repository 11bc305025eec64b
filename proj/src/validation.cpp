#include "ptlattice/validation.hpp"

#include <algorithm>

namespace ptlattice {

std::vector<ValidationPoint> validate_grid(const AtomFieldParams<double>& params, const CouplingProfile& coupling,
                                           std::span<const double> phases, int u_points) {
    if (u_points < 2) throw InvalidArgument("u_points must be >= 2");
    CouplingProfile line = coupling;
    line.dims = Dims::oneD;
    std::vector<ValidationPoint> out;
    for (const double phi : phases) {
        for (int i = 0; i < u_points; ++i) {
            const double u = -0.5 + static_cast<double>(i) / (u_points - 1);
            AtomFieldParams<double> p = params;
            p.phi = phi;
            p.omega_s = coupling_at(line, u);
            out.push_back({u, p.omega_s, phi, validate_analytic(p)});
        }
    }
    return out;
}

double max_rel_error(const std::vector<ValidationPoint>& points) {
    double worst = 0;
    for (const auto& p : points) worst = std::max(worst, p.result.rel_error);
    return worst;
}

}  // namespace ptlattice
