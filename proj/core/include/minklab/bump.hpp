#pragma once

#include "minklab/jet.hpp"
#include "minklab/smooth_fn.hpp"

namespace minklab {

/// Smooth step: 0 for u <= 0, 1 for u >= 1, C-infinity and infinitely flat
/// at both ends.
Jet smoothstep(const Jet& u);

/// Shape of a plateau bump: zero outside (lo, hi), one on [core_lo, core_hi],
/// smooth steps in between.
struct Plateau {
    double lo, core_lo, core_hi, hi;
};

Jet plateau_jet(const Plateau& p, double x, int degree);
SmoothFn plateau_fn(const Plateau& p, Interval dom, int max_order = kDefaultMaxOrder);

/// Phi: support [-1, 1], equal to one on [-1/2, 1/2].
inline constexpr Plateau kPhiShape{-1.0, -0.5, 0.5, 1.0};
/// Raw Psi before normalisation: support [2/3, 3/2], one on [3/4, 5/4].
inline constexpr Plateau kPsiShape{2.0 / 3.0, 0.75, 1.25, 1.5};

Jet phi_jet(double x, int degree);
/// Normalised Psi with sum over m of Psi(2^m x) = 1 for x > 0.
Jet psi_jet(double x, int degree);

struct BumpSystem {
    SmoothFn Psi;
    SmoothFn Phi;
    /// max |sum_m Psi(2^m x) - 1| over the certificate grid.
    double partition_residual = 0.0;
    std::size_t certificate_points = 0;
};

/// Psi on [0, 8] and Phi on [-2, 2], with the partition certificate taken on
/// `points` log-spaced samples in [1e-3, 1e3].
BumpSystem make_bump_system(std::size_t points = 1000);

/// sum over m in [-m_range, m_range] of Psi(2^m x).
double dyadic_sum(double x, int m_range = 60);

} // namespace minklab
