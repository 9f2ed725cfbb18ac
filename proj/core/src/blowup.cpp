#include "minklab/blowup.hpp"

#include <algorithm>
#include <cmath>

#include "minklab/infconv.hpp"
#include "minklab/rotated_graph.hpp"

namespace minklab {

BomanPair build_boman_pair(const BomanInput& f_in, const BomanInput& g_in, int k_max, const BomanOptions& opt) {
    BomanPair P{f_in, g_in, build_boman(f_in, k_max, opt), {}};
    P.G = build_boman_fixed_K(g_in, P.F.K, k_max, opt);
    return P;
}

namespace {

Interval sum_domain(const SmoothFn& f, const SmoothFn& g) {
    const Interval a = f.domain(), b = g.domain();
    return {a.lo + b.lo, a.hi + b.hi - 1e-12};
}

Interval window_at(int k, double frac) {
    const double t = t_k(k);
    return {2.0 * t - frac * t, 2.0 * t + frac * t};
}

} // namespace

BlowupTable boman_blowup(const BomanPair& P, int k_lo, int k_hi, double alpha, double window_frac,
                         std::size_t points, const Sequence& a) {
    if (k_lo < P.F.K || k_hi > P.F.k_max || k_lo > k_hi)
        throw ArgumentError("blow-up range must lie in [K, k_max]");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ArgumentError("alpha must lie in (0, 1]");
    BlowupTable T;
    T.alpha = alpha;
    const SmoothFn h = infconv_fn(P.F.f, P.G.f, sum_domain(P.F.f, P.G.f), 0);
    int run = 1;
    for (int k = k_lo; k <= k_hi; ++k) {
        BlowupRow r;
        r.k = k;
        const Interval w = window_at(k, window_frac);
        r.window_lo = w.lo;
        r.window_hi = w.hi;
        const HolderReport hr = holder_seminorm(h, 4, alpha, w, points);
        r.seminorm = hr.seminorm;
        r.x = hr.x;
        r.y = hr.y;
        r.c4 = cr_norm(h, 4, w, points).per_order[4];
        r.fprime_residual = P.F.fprime_residual.at(static_cast<std::size_t>(k - P.F.K));
        if (a) {
            r.hypothesis_ratio = std::pow(a(k), alpha) / P.f_in.b(k);
            if (!T.rows.empty() && !(r.hypothesis_ratio < T.rows.back().hypothesis_ratio) && T.hypothesis_decreasing) {
                T.hypothesis_decreasing = false;
                T.first_hypothesis_violation = k;
            }
        }
        if (!T.rows.empty()) run = r.seminorm > T.rows.back().seminorm ? run + 1 : 1;
        T.longest_increasing_run = std::max(T.longest_increasing_run, run);
        T.rows.push_back(r);
    }
    return T;
}

double sweep_threshold(const BomanPair& P, int k, double window_frac, double factor) {
    const double t = t_k(k);
    return factor * P.F.f.eval(t, 2) * window_frac * t;
}

SweepResult rotation_sweep(const BomanPair& P, int k, const std::vector<double>& deltas, double alpha,
                           double window_frac, std::size_t points, double threshold_factor) {
    if (k < P.F.K || k > P.F.k_max) throw ArgumentError("sweep index outside [K, k_max]");
    SweepResult S;
    S.k = k;
    S.threshold = sweep_threshold(P, k, window_frac, threshold_factor);
    const Interval w = window_at(k, window_frac);
    auto seminorm = [&](double delta) {
        const SmoothFn fd = delta == 0.0 ? P.F.f : rotate_graph(P.F.f, delta).f_phi;
        const SmoothFn h = infconv_fn(fd, P.G.f, sum_domain(fd, P.G.f), 0);
        return holder_seminorm(h, 4, alpha, w, points).seminorm;
    };
    S.base = seminorm(0.0);
    for (double d : deltas) {
        SweepRow r;
        r.delta = d;
        r.seminorm = d == 0.0 ? S.base : seminorm(d);
        r.rel_change = std::abs(r.seminorm - S.base) / S.base;
        r.below_threshold = std::abs(d) < S.threshold;
        if (r.below_threshold) S.max_rel_change_below = std::max(S.max_rel_change_below, r.rel_change);
        S.rows.push_back(r);
    }
    return S;
}

} // namespace minklab
