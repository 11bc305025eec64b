#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ptlattice/analytic.hpp"
#include "ptlattice/susceptibility.hpp"

namespace ptlattice {

struct ValidationPoint {
    double u{0};
    double omega_s{0};
    double phi{0};
    AnalyticValidation<double> result;
};

/// Closed form against linear solve for every phase in `phases` and every
/// standing-wave value Omega_s(u) with u on `u_points` evenly spaced
/// points of [-1/2, 1/2].
std::vector<ValidationPoint> validate_grid(const AtomFieldParams<double>& params, const CouplingProfile& coupling,
                                           std::span<const double> phases, int u_points);

double max_rel_error(const std::vector<ValidationPoint>& points);

}  // namespace ptlattice
