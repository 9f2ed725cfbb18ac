#include "minklab/rotated_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace minklab {

double RotatedFn::R(double x) const { return x * std::cos(phi) - base(x) * std::sin(phi); }
double RotatedFn::I(double x) const { return x * std::sin(phi) + base(x) * std::cos(phi); }

namespace {

double invert_R(const SmoothFn& f, double c, double s, double y) {
    const Interval d = f.domain();
    auto R = [&](double x) { return x * c - f(x) * s; };
    const double rlo = R(d.lo), rhi = R(d.hi);
    if (y <= rlo) return d.lo;
    if (y >= rhi) return d.hi;
    // Newton steps kept inside a shrinking bisection bracket.
    double a = d.lo, b = d.hi;
    double x = std::clamp(y / c, a, b);
    for (int it = 0; it < 200; ++it) {
        const double r = R(x) - y;
        if (r == 0.0) return x;
        if (r < 0.0) a = x; else b = x;
        const double rp = c - f.eval(x, 1) * s;
        double xn = x - r / rp;
        if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
        if (xn == x || b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)))
            return xn;
        x = xn;
    }
    return x;
}

class RotatedImpl final : public SmoothFn::Impl {
public:
    RotatedImpl(SmoothFn f, double phi, Interval dom)
        : Impl(dom, f.max_order(), FnKind::closed_form), f_(std::move(f)), c_(std::cos(phi)),
          s_(std::sin(phi)) {}

    double value(double y, int order) const override {
        if (order == 0) {
            const double x = invert_R(f_, c_, s_, y);
            return x * s_ + f_(x) * c_;
        }
        return jet(y, order).derivative(order);
    }

    // f_phi(R(x) + s) = I(x + t(s)) with t the reversion of R(x + t) - R(x).
    Jet jet(double y, int degree) const override {
        const double x = invert_R(f_, c_, s_, y);
        const Jet fx = f_.jet(x, degree);
        const Jet id = Jet::variable(degree, x);
        const Jet Rj = id * c_ - fx * s_;
        const Jet Ij = id * s_ + fx * c_;
        return compose(Ij, revert(Rj));
    }

private:
    SmoothFn f_;
    double c_, s_;
};

} // namespace

double RotatedFn::R_inverse(double y) const {
    return invert_R(base, std::cos(phi), std::sin(phi), y);
}

RotatedFn rotate_graph(const SmoothFn& f, double phi, std::size_t samples) {
    RotatedFn rf;
    rf.base = f;
    rf.phi = phi;
    if (phi == 0.0) {
        rf.f_phi = f;
        return rf;
    }
    if (f.max_order() < 1) throw CapabilityError("rotate_graph needs f'");
    const double c = std::cos(phi), s = std::sin(phi);
    const Interval d = f.domain();
    for (double x : linspace(d.lo, d.hi, std::max<std::size_t>(samples, 2))) {
        const double Rp = c - f.eval(x, 1) * s;
        if (!(Rp > 0.0))
            throw RotationError("R' = " + std::to_string(Rp) + " <= 0 at x=" + std::to_string(x) +
                                " for phi=" + std::to_string(phi));
    }
    const Interval out{rf.R(d.lo), rf.R(d.hi)};
    rf.f_phi = SmoothFn(std::make_shared<RotatedImpl>(f, phi, out));
    return rf;
}

RotatedDerivs rotated_derivatives(const RotatedFn& rf, double x) {
    const double c = std::cos(rf.phi), s = std::sin(rf.phi);
    const double d1 = rf.base.eval(x, 1), d2 = rf.base.eval(x, 2);
    const double Rp = c - d1 * s;
    return {(s + d1 * c) / Rp, d2 / (Rp * Rp * Rp)};
}

CrBoundReport cr_bound_check(const SmoothFn& f, const std::vector<double>& phis, int r,
                             std::size_t samples) {
    if (r < 0) throw ArgumentError("norm order must be nonnegative");
    const int top = std::max(r, 2 * r - 1);
    if (top > f.max_order()) throw CapabilityError("cr_bound_check needs f to order 2r - 1");
    const Interval J = f.domain();
    CrBoundReport rep;
    rep.r = r;
    rep.D = std::max(J.hi, 0.0) - std::min(J.lo, 0.0);
    const NormReport nf = cr_norm(f, top, J, samples);
    std::vector<double> prefix(nf.per_order.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < prefix.size(); ++i) prefix[i] = acc += nf.per_order[i];
    auto norm = [&](int k) { return prefix[static_cast<std::size_t>(k)]; };

    for (double phi : phis) {
        CrBoundEntry e;
        e.phi = phi;
        const double c = std::cos(phi), s = std::abs(std::sin(phi));
        e.hypothesis = std::abs(std::tan(phi)) * norm(r);
        if (!(e.hypothesis < 1.0))
            throw PreconditionError("||f tan phi||_r = " + std::to_string(e.hypothesis) +
                                    " >= 1 for phi=" + std::to_string(phi));
        double bound = rep.D + norm(0);
        for (int i = 0; i < r; ++i) {
            const double a = c - s * norm(r + i), b = c - s * norm(r);
            if (!(a > 0.0 && b > 0.0))
                throw PreconditionError("bound denominator vanishes for phi=" + std::to_string(phi));
            bound += (rep.D + 1.0 + norm(r + i)) / (a * std::pow(b, i));
        }
        e.bound = bound;
        const RotatedFn rf = rotate_graph(f, phi);
        e.measured = cr_norm(rf.f_phi, r, rf.f_phi.domain(), samples).value;
        e.pass = e.measured <= e.bound;
        rep.all_pass = rep.all_pass && e.pass;
        rep.entries.push_back(e);
    }
    return rep;
}

} // namespace minklab
