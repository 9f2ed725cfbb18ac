#pragma once

#include <vector>

#include "minklab/boman.hpp"

namespace minklab {

/// f from the quadratic-side input, g on the same K from the other input.
struct BomanPair {
    BomanInput f_in, g_in;
    BomanOutput F, G;
};

BomanPair build_boman_pair(const BomanInput& f_in, const BomanInput& g_in, int k_max,
                           const BomanOptions& opt = {});

struct BlowupRow {
    int k = 0;
    double window_lo = 0.0, window_hi = 0.0;
    double seminorm = 0.0;       ///< C^{4,alpha} seminorm of f box g on the window
    double x = 0.0, y = 0.0;     ///< pair attaining it
    double c4 = 0.0;             ///< max |h''''| on the window (alpha = 0 control)
    double fprime_residual = 0.0;
    double hypothesis_ratio = 0.0; ///< a_k^alpha / b_k when a is supplied
};

struct BlowupTable {
    double alpha = 0.0;
    std::vector<BlowupRow> rows;
    int longest_increasing_run = 0; ///< longest run of strictly increasing seminorms (in rows)
    bool hypothesis_decreasing = true;
    int first_hypothesis_violation = -1;
};

/// Windows 2 t_k +- window_frac t_k for k in [k_lo, k_hi].
BlowupTable boman_blowup(const BomanPair& P, int k_lo, int k_hi, double alpha, double window_frac = 0.125,
                         std::size_t points = 512, const Sequence& a = {});

/// 0.02 f''(t_k) w_k: a rotation this small moves the minimiser by a small
/// fraction of the window.
double sweep_threshold(const BomanPair& P, int k, double window_frac = 0.125, double factor = 0.02);

struct SweepRow {
    double delta = 0.0;
    double seminorm = 0.0;
    double rel_change = 0.0;     ///< |s(delta) - s(0)| / s(0)
    bool below_threshold = false;
};

struct SweepResult {
    int k = 0;
    double threshold = 0.0;
    double base = 0.0;           ///< seminorm at delta = 0
    std::vector<SweepRow> rows;
    double max_rel_change_below = 0.0;
};

/// Seminorm of f_delta box g near 2 t_k, f_delta the graph of f rotated by delta.
SweepResult rotation_sweep(const BomanPair& P, int k, const std::vector<double>& deltas, double alpha,
                           double window_frac = 0.125, std::size_t points = 512, double threshold_factor = 0.02);

} // namespace minklab
