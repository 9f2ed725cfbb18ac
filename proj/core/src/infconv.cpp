#include "minklab/infconv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace minklab {

const char* to_string(Route r) { return r == Route::direct_min ? "direct_min" : "conjugate"; }

void require_convex(const SmoothFn& f, const char* name, double tol, std::size_t n) {
    const Interval d = f.domain();
    const auto xs = linspace(d.lo, d.hi, std::max<std::size_t>(n, 3));
    std::vector<double> v(xs.size());
    double scale = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        v[i] = f(xs[i]);
        scale = std::max(scale, std::abs(v[i]));
    }
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        const double d2 = v[i + 1] - 2.0 * v[i] + v[i - 1];
        if (d2 < -tol * (1.0 + scale))
            throw ValidationError(std::string(name) + " is not convex near x=" + std::to_string(xs[i]));
    }
}

Interval feasible_window(const SmoothFn& f, const SmoothFn& g, double x) {
    const Interval fd = f.domain(), gd = g.domain();
    const Interval w{std::max(fd.lo, x - gd.hi), std::min(fd.hi, x - gd.lo)};
    if (w.lo > w.hi)
        throw ArgumentError("x=" + std::to_string(x) + " outside the sum of the domains");
    return w;
}

namespace {

bool has_gradients(const SmoothFn& f, const SmoothFn& g) {
    return f.max_order() >= 1 && g.max_order() >= 1;
}

double sigma(const SmoothFn& f, const SmoothFn& g, double x, double y) {
    return f(y) + g(x - y);
}

} // namespace

double minimizer_map(const SmoothFn& f, const SmoothFn& g, double x) {
    if (!has_gradients(f, g)) throw CapabilityError("minimizer_map needs first derivatives");
    const Interval w = feasible_window(f, g, x);
    return bisect([&](double y) { return f.eval(y, 1) - g.eval(x - y, 1); }, w.lo, w.hi);
}

MinPoint minimize_at(const SmoothFn& f, const SmoothFn& g, double x, std::size_t scan_n) {
    const Interval w = feasible_window(f, g, x);
    MinPoint mp;
    if (w.length() == 0.0) {
        mp.y = w.lo;
        mp.value = sigma(f, g, x, mp.y);
        mp.boundary = true;
        return mp;
    }
    double y_gs = w.mid();
    bool scan_edge = false;
    if (scan_n >= 3) {
        const auto ys = linspace(w.lo, w.hi, scan_n);
        std::size_t best = 0;
        double vbest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < ys.size(); ++i) {
            const double v = sigma(f, g, x, ys[i]);
            if (v < vbest) {
                vbest = v;
                best = i;
            }
        }
        const double a = ys[best == 0 ? 0 : best - 1];
        const double b = ys[std::min(best + 1, ys.size() - 1)];
        y_gs = golden_min([&](double y) { return sigma(f, g, x, y); }, a, b,
                          1e-13 * std::max(1.0, w.length()));
        scan_edge = best == 0 || best + 1 == ys.size();
    }
    if (!has_gradients(f, g)) {
        mp.y = y_gs;
        mp.value = sigma(f, g, x, y_gs);
        const double eps = 1e-9 * std::max(1.0, w.length());
        mp.boundary = scan_edge && (y_gs - w.lo < eps || w.hi - y_gs < eps);
        if (mp.boundary) mp.y = y_gs - w.lo < eps ? w.lo : w.hi;
        return mp;
    }
    auto d = [&](double y) { return f.eval(y, 1) - g.eval(x - y, 1); };
    const double dlo = d(w.lo), dhi = d(w.hi);
    if (dlo >= 0.0) {
        mp.y = w.lo;
        mp.boundary = dlo > 0.0;
    } else if (dhi <= 0.0) {
        mp.y = w.hi;
        mp.boundary = dhi < 0.0;
    } else {
        mp.y = bisect(d, w.lo, w.hi);
    }
    mp.value = sigma(f, g, x, mp.y);
    if (scan_n >= 3) {
        // The scan guards against non-convex input slipping past the checks.
        const double v_gs = sigma(f, g, x, y_gs);
        if (v_gs < mp.value - 1e-9 * (1.0 + std::abs(mp.value))) {
            mp.y = y_gs;
            mp.value = v_gs;
            mp.boundary = false;
        }
    }
    return mp;
}

Jet infconv_jet(const SmoothFn& f, const SmoothFn& g, double x, double y, int degree) {
    const double h0 = f(y) + g(x - y);
    if (degree == 0) return Jet(0, h0);
    const int n = degree - 1;
    const Jet F = f.jet(y, degree).differentiate();
    const Jet G = g.jet(x - y, degree).differentiate();
    Jet u(n);
    if (n >= 1) {
        const double den = F.coeff(1) + G.coeff(1);
        if (!(den > 0.0))
            throw DegenerateHessian("f'' + g'' = " + std::to_string(den) + " at x=" + std::to_string(x));
        for (int k = 1; k <= n; ++k) {
            Jet v = Jet::variable(n, 0.0) - u;
            const double fk = compose(F, u).coeff(k);
            const double gk = compose(G, v).coeff(k);
            u.coeff(k) = (gk - fk) / den;
        }
    }
    const Jet hp = compose(F, u);
    Jet h(degree, h0);
    for (int k = 0; k <= n; ++k) h.coeff(k + 1) = hp.coeff(k) / (k + 1);
    return h;
}

namespace {

class InfConvImpl final : public SmoothFn::Impl {
public:
    InfConvImpl(SmoothFn f, SmoothFn g, Interval out, std::size_t scan_n)
        : Impl(out, std::min(f.max_order(), g.max_order()), FnKind::closed_form),
          f_(std::move(f)), g_(std::move(g)), scan_n_(scan_n) {}

    double value(double x, int order) const override {
        const MinPoint mp = minimize_at(f_, g_, x, scan_n_);
        if (order == 0) return mp.value;
        if (mp.boundary) return boundary_jet(x, mp, order).derivative(order);
        if (order == 1) return f_.eval(mp.y, 1);
        return infconv_jet(f_, g_, x, mp.y, order).derivative(order);
    }

    Jet jet(double x, int degree) const override {
        const MinPoint mp = minimize_at(f_, g_, x, scan_n_);
        if (mp.boundary) return boundary_jet(x, mp, degree);
        return infconv_jet(f_, g_, x, mp.y, degree);
    }

private:
    // With the minimiser pinned to an edge of the feasible window, h follows
    // whichever summand still moves with x.
    Jet boundary_jet(double x, const MinPoint& mp, int degree) const {
        const Interval gd = g_.domain();
        const bool g_edge = mp.y == x - gd.hi || mp.y == x - gd.lo;
        Jet j = g_edge ? f_.jet(mp.y, degree) : g_.jet(x - mp.y, degree);
        j.coeff(0) = mp.value;
        return j;
    }

    SmoothFn f_, g_;
    std::size_t scan_n_;
};

} // namespace

SmoothFn infconv_fn(const SmoothFn& f, const SmoothFn& g, Interval out, std::size_t scan_n) {
    return SmoothFn(std::make_shared<InfConvImpl>(f, g, out, scan_n));
}

InfConvResult infconv_direct(const SmoothFn& f, const SmoothFn& g, Interval out,
                             const InfConvOptions& opt) {
    if (!(out.hi > out.lo)) throw ArgumentError("empty output interval");
    require_convex(f, "f", opt.convexity_tol);
    require_convex(g, "g", opt.convexity_tol);
    InfConvResult r;
    r.route = Route::direct_min;
    r.h = infconv_fn(f, g, out, has_gradients(f, g) ? 0 : opt.scan_n);
    r.x = linspace(out.lo, out.hi, opt.grid_n);
    const std::size_t n = r.x.size();
    r.h_values.resize(n);
    r.dh.assign(n, std::numeric_limits<double>::quiet_NaN());
    r.mu.resize(n);
    r.boundary.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = r.x[i];
        const MinPoint mp = minimize_at(f, g, x, opt.scan_n);
        r.h_values[i] = mp.value;
        r.mu[i] = mp.y;
        r.boundary[i] = mp.boundary ? 1 : 0;
        if (has_gradients(f, g)) {
            const Interval gd = g.domain();
            const bool g_edge = mp.y == x - gd.hi || mp.y == x - gd.lo;
            r.dh[i] = (!mp.boundary || g_edge) ? f.eval(mp.y, 1) : g.eval(x - mp.y, 1);
        }
    }
    return r;
}

double DiscreteConjugate::eval(double s) const {
    const auto j = static_cast<std::size_t>(std::lower_bound(slopes.begin(), slopes.end(), s) - slopes.begin());
    return s * vx[j] - vf[j];
}

DiscreteConjugate discrete_conjugate(const std::vector<double>& x, const std::vector<double>& f) {
    if (x.size() != f.size() || x.empty()) throw ArgumentError("conjugate needs matched samples");
    DiscreteConjugate c;
    for (std::size_t i = 0; i < x.size(); ++i) {
        while (c.vx.size() >= 2) {
            const std::size_t m = c.vx.size();
            const double ax = c.vx[m - 1] - c.vx[m - 2], af = c.vf[m - 1] - c.vf[m - 2];
            const double bx = x[i] - c.vx[m - 2], bf = f[i] - c.vf[m - 2];
            if (ax * bf - af * bx > 0.0) break;
            c.vx.pop_back();
            c.vf.pop_back();
        }
        c.vx.push_back(x[i]);
        c.vf.push_back(f[i]);
    }
    for (std::size_t j = 1; j < c.vx.size(); ++j)
        c.slopes.push_back((c.vf[j] - c.vf[j - 1]) / (c.vx[j] - c.vx[j - 1]));
    return c;
}

DiscreteConjugate add_conjugates(const DiscreteConjugate& a, const DiscreteConjugate& b) {
    DiscreteConjugate c;
    std::size_t i = 0, j = 0;
    auto push = [&] {
        c.vx.push_back(a.vx[i] + b.vx[j]);
        c.vf.push_back(a.vf[i] + b.vf[j]);
        c.vx_first.push_back(a.vx[i]);
    };
    push();
    while (i < a.slopes.size() || j < b.slopes.size()) {
        const bool take_a = j >= b.slopes.size() || (i < a.slopes.size() && a.slopes[i] <= b.slopes[j]);
        if (take_a) {
            c.slopes.push_back(a.slopes[i]);
            ++i;
        } else {
            c.slopes.push_back(b.slopes[j]);
            ++j;
        }
        push();
    }
    return c;
}

namespace {

// Segment of the primal hull containing x, or npos when outside.
std::size_t hull_segment(const DiscreteConjugate& c, double x) {
    const double slack = 1e-12 * std::max(1.0, std::abs(c.vx.back() - c.vx.front()));
    if (c.vx.size() < 2 || x < c.vx.front() - slack || x > c.vx.back() + slack)
        return static_cast<std::size_t>(-1);
    auto it = std::upper_bound(c.vx.begin(), c.vx.end(), x);
    std::size_t k = static_cast<std::size_t>(it - c.vx.begin());
    k = std::clamp<std::size_t>(k, 1, c.vx.size() - 1);
    return k - 1;
}

} // namespace

double back_conjugate(const DiscreteConjugate& c, double x) {
    const std::size_t k = hull_segment(c, x);
    if (k == static_cast<std::size_t>(-1)) return std::numeric_limits<double>::quiet_NaN();
    const double t = (x - c.vx[k]) / (c.vx[k + 1] - c.vx[k]);
    return c.vf[k] + t * (c.vf[k + 1] - c.vf[k]);
}

namespace {

class HullImpl final : public SmoothFn::Impl {
public:
    HullImpl(DiscreteConjugate c, Interval out)
        : Impl(out, 1, FnKind::closed_form), c_(std::move(c)) {}
    double value(double x, int order) const override {
        if (order == 0) return back_conjugate(c_, x);
        const std::size_t k = hull_segment(c_, x);
        if (k == static_cast<std::size_t>(-1)) return std::numeric_limits<double>::quiet_NaN();
        return c_.slopes[k];
    }

private:
    DiscreteConjugate c_;
};

} // namespace

InfConvResult infconv_conjugate(const SmoothFn& f, const SmoothFn& g, Interval out,
                                const InfConvOptions& opt) {
    if (!(out.hi > out.lo)) throw ArgumentError("empty output interval");
    require_convex(f, "f", opt.convexity_tol);
    require_convex(g, "g", opt.convexity_tol);
    auto sample = [&](const SmoothFn& fn) {
        const auto xs = linspace(fn.domain().lo, fn.domain().hi, opt.primal_n);
        std::vector<double> v(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) v[i] = fn(xs[i]);
        return discrete_conjugate(xs, v);
    };
    const DiscreteConjugate sum = add_conjugates(sample(f), sample(g));
    InfConvResult r;
    r.route = Route::conjugate;
    r.x = linspace(out.lo, out.hi, opt.grid_n);
    const std::size_t n = r.x.size();
    r.h_values.resize(n);
    r.dh.resize(n);
    r.mu.resize(n);
    r.boundary.resize(n);
    const double flo = f.domain().lo, fhi = f.domain().hi;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = r.x[i];
        const std::size_t k = hull_segment(sum, x);
        if (k == static_cast<std::size_t>(-1))
            throw ArgumentError("x=" + std::to_string(x) + " outside the sum of the domains");
        const double t = (x - sum.vx[k]) / (sum.vx[k + 1] - sum.vx[k]);
        r.h_values[i] = sum.vf[k] + t * (sum.vf[k + 1] - sum.vf[k]);
        r.dh[i] = sum.slopes[k];
        r.mu[i] = sum.vx_first[k] + t * (sum.vx_first[k + 1] - sum.vx_first[k]);
        const Interval w = feasible_window(f, g, x);
        const double eps = 1e-9 * std::max(1.0, fhi - flo);
        r.boundary[i] = (r.mu[i] - w.lo < eps || w.hi - r.mu[i] < eps) ? 1 : 0;
    }
    r.h = SmoothFn(std::make_shared<HullImpl>(sum, out));
    return r;
}

SmoothnessDiag smoothness_diag(const SmoothFn& f, const SmoothFn& g, double x, double step) {
    if (f.max_order() < 2 || g.max_order() < 2)
        throw CapabilityError("smoothness_diag needs second derivatives");
    SmoothnessDiag d;
    d.x = x;
    d.mu = minimizer_map(f, g, x);
    d.hess_f = f.eval(d.mu, 2);
    d.hess_g = g.eval(x - d.mu, 2);
    const double den = d.hess_f + d.hess_g;
    if (!(den > 0.0))
        throw DegenerateHessian("f'' + g'' = " + std::to_string(den) + " at x=" + std::to_string(x));
    d.j_mu = d.hess_g / den;
    d.grad_f = f.eval(d.mu, 1);
    d.grad_g = g.eval(x - d.mu, 1);

    auto mu_at = [&](double t) { return minimizer_map(f, g, t); };
    auto h_at = [&](double t) {
        const double y = mu_at(t);
        return f(y) + g(t - y);
    };
    const double h0 = h_at(x);
    auto d1 = [&](auto&& fn, double e) { return (fn(x + e) - fn(x - e)) / (2.0 * e); };
    auto d2 = [&](double e) { return (h_at(x + e) - 2.0 * h0 + h_at(x - e)) / (e * e); };
    d.dh = (4.0 * d1(h_at, 0.5 * step) - d1(h_at, step)) / 3.0;
    d.hess_h = (4.0 * d2(0.5 * step) - d2(step)) / 3.0;
    d.j_mu_fd = (4.0 * d1(mu_at, 0.5 * step) - d1(mu_at, step)) / 3.0;

    const double sg = 1.0 + std::abs(d.dh);
    d.res_grad = std::max(std::abs(d.dh - d.grad_f), std::abs(d.dh - d.grad_g)) / sg;
    const double sh = 1.0 + std::abs(d.hess_h);
    d.res_hess = std::max(std::abs(d.hess_h - d.hess_f * d.j_mu),
                          std::abs(d.hess_h - d.hess_g * (1.0 - d.j_mu))) / sh;
    d.res_jmu = std::abs(d.j_mu - d.j_mu_fd) / (1.0 + std::abs(d.j_mu));
    return d;
}

void write_infconv_csv(std::ostream& os, const InfConvResult& r, const SmoothFn& f,
                       const SmoothFn& g) {
    os << "x,h,mu,dh,d2h,j_mu,boundary_flag\n";
    const bool second = f.max_order() >= 2 && g.max_order() >= 2;
    char buf[256];
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        double d2h = std::numeric_limits<double>::quiet_NaN(), j = d2h;
        if (second && !r.boundary[i]) {
            const double a = f.eval(r.mu[i], 2), b = g.eval(r.x[i] - r.mu[i], 2);
            if (a + b > 0.0) {
                j = b / (a + b);
                d2h = a * j;
            }
        }
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", r.x[i],
                      r.h_values[i], r.mu[i], r.dh[i], d2h, j, static_cast<int>(r.boundary[i]));
        os << buf;
    }
}

} // namespace minklab
