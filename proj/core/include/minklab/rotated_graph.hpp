#pragma once

#include <vector>

#include "minklab/smooth_fn.hpp"

namespace minklab {

/// Graph of `base` rotated by phi about the origin, as the graph of f_phi.
struct RotatedFn {
    SmoothFn base;
    double phi = 0.0;
    SmoothFn f_phi;

    double R(double x) const;
    double I(double x) const;
    /// x with R(x) = y, by bisection.
    double R_inverse(double y) const;
};

/// Throws RotationError when cos(phi) - f' sin(phi) <= 0 at any of `samples`
/// points of the domain.  phi == 0 returns f itself.
RotatedFn rotate_graph(const SmoothFn& f, double phi, std::size_t samples = 4097);

struct RotatedDerivs {
    double first = 0.0;
    double second = 0.0;
};

/// f_phi' and f_phi'' at R(x), from the closed-form rotation formulas.
RotatedDerivs rotated_derivatives(const RotatedFn& rf, double x);

struct CrBoundEntry {
    double phi = 0.0;
    double measured = 0.0;   ///< ||f_phi|| in C^r over R(J)
    double bound = 0.0;
    double hypothesis = 0.0; ///< ||f tan(phi)||_r, must be < 1
    bool pass = false;
};

struct CrBoundReport {
    int r = 0;
    double D = 0.0;
    std::vector<CrBoundEntry> entries;
    bool all_pass = true;
};

/// Measured C^r norm of f_phi against the explicit bound
///   D + ||f||_0 + sum_{i<r} (D + 1 + ||f||_{r+i}) /
///                ((cos phi - ||sin phi f||_{r+i}) (cos phi - ||sin phi f||_r)^i)
/// with D = diam({0} u J).  Needs f.max_order >= 2r - 1.
CrBoundReport cr_bound_check(const SmoothFn& f, const std::vector<double>& phis, int r,
                             std::size_t samples = 2049);

} // namespace minklab
