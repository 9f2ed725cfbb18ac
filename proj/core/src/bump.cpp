#include "minklab/bump.hpp"

#include <cmath>

namespace minklab {

Jet smoothstep(const Jet& u) {
    const int n = u.degree();
    const double u0 = u.value();
    if (u0 <= 0.0) return Jet(n, 0.0);
    if (u0 >= 1.0) return Jet(n, 1.0);
    // S = 1 / (1 + exp(1/u - 1/(1-u)))
    Jet one_minus = -u;
    one_minus += 1.0;
    const Jet w = reciprocal(u) - reciprocal(one_minus);
    if (w.value() > 700.0) return Jet(n, 0.0);
    if (w.value() < -700.0) return Jet(n, 1.0);
    Jet e = exp(w);
    e += 1.0;
    return reciprocal(e);
}

Jet plateau_jet(const Plateau& p, double x, int degree) {
    if (x <= p.lo || x >= p.hi) return Jet(degree, 0.0);
    if (x >= p.core_lo && x <= p.core_hi) return Jet(degree, 1.0);
    if (x < p.core_lo) {
        const double s = 1.0 / (p.core_lo - p.lo);
        return smoothstep(Jet::variable(degree, (x - p.lo) * s).scaled(s));
    }
    const double s = 1.0 / (p.hi - p.core_hi);
    return smoothstep(Jet::variable(degree, (p.hi - x) * s).scaled(-s));
}

SmoothFn plateau_fn(const Plateau& p, Interval dom, int max_order) {
    return from_jet(dom, [p](double x, int n) { return plateau_jet(p, x, n); }, max_order);
}

Jet phi_jet(double x, int degree) { return plateau_jet(kPhiShape, x, degree); }

Jet psi_jet(double x, int degree) {
    const Jet raw = plateau_jet(kPsiShape, x, degree);
    if (raw.value() == 0.0) return Jet(degree, 0.0);
    // Only Psi_raw(x), Psi_raw(2x) and Psi_raw(x/2) can be nonzero on the
    // support of Psi_raw(x).
    Jet den = raw;
    den += plateau_jet(kPsiShape, 2.0 * x, degree).scaled(2.0);
    den += plateau_jet(kPsiShape, 0.5 * x, degree).scaled(0.5);
    return raw / den;
}

double dyadic_sum(double x, int m_range) {
    double s = 0.0;
    for (int m = -m_range; m <= m_range; ++m) s += psi_jet(std::ldexp(x, m), 0).value();
    return s;
}

BumpSystem make_bump_system(std::size_t points) {
    BumpSystem b;
    b.Psi = from_jet({0.0, 8.0}, [](double x, int n) { return psi_jet(x, n); });
    b.Phi = from_jet({-2.0, 2.0}, [](double x, int n) { return phi_jet(x, n); });
    b.certificate_points = points;
    for (std::size_t i = 0; i < points; ++i) {
        const double t = points > 1 ? static_cast<double>(i) / static_cast<double>(points - 1) : 0.5;
        const double x = std::pow(10.0, -3.0 + 6.0 * t);
        b.partition_residual = std::max(b.partition_residual, std::abs(dyadic_sum(x) - 1.0));
    }
    return b;
}

} // namespace minklab
