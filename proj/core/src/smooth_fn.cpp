#include "minklab/smooth_fn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace minklab {

const char* to_string(FnKind k) {
    return k == FnKind::closed_form ? "closed_form" : "grid_integrated";
}

Jet SmoothFn::Impl::jet(double x, int degree) const {
    std::vector<double> d(static_cast<std::size_t>(degree) + 1);
    for (int k = 0; k <= degree; ++k) d[static_cast<std::size_t>(k)] = value(x, k);
    return Jet::from_derivatives(d, degree);
}

const SmoothFn::Impl& SmoothFn::impl() const {
    if (!impl_) throw ArgumentError("use of an empty SmoothFn");
    return *impl_;
}

void SmoothFn::check(double x, int order) const {
    const Impl& p = impl();
    if (order < 0 || order > p.max_order)
        throw CapabilityError("derivative order " + std::to_string(order) + " exceeds max_order " +
                              std::to_string(p.max_order));
    const double slack = 1e-12 * std::max({1.0, std::abs(p.domain.lo), std::abs(p.domain.hi)});
    if (!(p.domain.contains(x, slack)))
        throw ArgumentError("x=" + std::to_string(x) + " outside function domain");
}

double SmoothFn::eval(double x, int order) const {
    check(x, order);
    const Interval d = impl_->domain;
    return impl_->value(std::clamp(x, d.lo, d.hi), order);
}

Jet SmoothFn::jet(double x, int degree) const {
    check(x, degree);
    const Interval d = impl_->domain;
    return impl_->jet(std::clamp(x, d.lo, d.hi), degree);
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    if (n < 2) throw ArgumentError("linspace needs at least two points");
    std::vector<double> v(n);
    const double h = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) v[i] = a + h * static_cast<double>(i);
    v.back() = b;
    return v;
}

namespace {

class JetImpl final : public SmoothFn::Impl {
public:
    JetImpl(Interval dom, JetFn fn, int max_order)
        : Impl(dom, max_order, FnKind::closed_form), fn_(std::move(fn)) {}
    double value(double x, int order) const override { return fn_(x, order).derivative(order); }
    Jet jet(double x, int degree) const override { return fn_(x, degree); }

private:
    JetFn fn_;
};

class GridImpl final : public SmoothFn::Impl {
public:
    GridImpl(Interval dom, JetFn second, GridTables t, int max_order)
        : Impl(dom, max_order, FnKind::grid_integrated), second_(std::move(second)), t_(std::move(t)) {}

    double f2(double x) const { return second_(x, 0).value(); }

    std::size_t cell(double x) const {
        auto it = std::upper_bound(t_.x.begin(), t_.x.end(), x);
        std::size_t i = static_cast<std::size_t>(it - t_.x.begin());
        if (i == 0) return 0;
        return std::min(i - 1, t_.x.size() - 2);
    }

    double value(double x, int order) const override {
        if (order >= 2) return second_(x, order - 2).derivative(order - 2);
        const std::size_t i = cell(x);
        const double x0 = t_.x[i], h = x - x0;
        if (h == 0.0) return order == 0 ? t_.f[i] : t_.df[i];
        const double a = f2(x0), m = f2(x0 + 0.5 * h), b = f2(x);
        if (order == 1) return t_.df[i] + h / 6.0 * (a + 4.0 * m + b);
        return t_.f[i] + t_.df[i] * h + h * h / 6.0 * (a + 2.0 * m);
    }

    Jet jet(double x, int degree) const override {
        Jet j(degree);
        j.coeff(0) = value(x, 0);
        if (degree >= 1) j.coeff(1) = value(x, 1);
        if (degree >= 2) {
            Jet s = second_(x, degree - 2);
            for (int k = 0; k <= degree - 2; ++k) j.coeff(k + 2) = s.coeff(k) / ((k + 1.0) * (k + 2.0));
        }
        return j;
    }

    const GridTables& tables() const { return t_; }

private:
    JetFn second_;
    GridTables t_;
};

class DerivedImpl final : public SmoothFn::Impl {
public:
    using ValueFn = std::function<double(double, int)>;
    using JetMap = std::function<Jet(double, int)>;
    DerivedImpl(Interval dom, int max_order, FnKind kind, ValueFn v, JetMap j)
        : Impl(dom, max_order, kind), v_(std::move(v)), j_(std::move(j)) {}
    double value(double x, int order) const override { return v_(x, order); }
    Jet jet(double x, int degree) const override { return j_(x, degree); }

private:
    ValueFn v_;
    JetMap j_;
};

} // namespace

SmoothFn from_jet(Interval dom, JetFn fn, int max_order) {
    if (!(dom.hi > dom.lo)) throw ArgumentError("empty function domain");
    return SmoothFn(std::make_shared<JetImpl>(dom, std::move(fn), max_order));
}

SmoothFn polynomial(std::vector<double> coeffs, Interval dom, int max_order) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    return from_jet(
        dom,
        [c = std::move(coeffs)](double x, int n) {
            const Jet t = Jet::variable(n, x);
            Jet r(n, c.back());
            for (std::size_t k = c.size() - 1; k-- > 0;) {
                r = r * t;
                r += c[k];
            }
            return r;
        },
        max_order);
}

std::vector<double> uniform_nodes(Interval dom, std::size_t n) { return linspace(dom.lo, dom.hi, n); }

std::vector<double> dyadic_nodes(double x0, double hi, std::size_t per_shell) {
    if (!(x0 > 0.0 && x0 < hi)) throw ArgumentError("dyadic_nodes needs 0 < x0 < hi");
    std::vector<double> nodes{0.0, x0};
    double a = x0;
    while (a < hi) {
        const double b = std::min(2.0 * a, hi);
        const auto n = std::max<std::size_t>(
            8, static_cast<std::size_t>(std::ceil(static_cast<double>(per_shell) * (b - a) / a)));
        for (std::size_t i = 1; i <= n; ++i)
            nodes.push_back(i == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n));
        a = b;
    }
    return nodes;
}

SmoothFn integrate_twice(Interval dom, JetFn second, std::vector<double> nodes, double f_lo,
                         double df_lo, int max_order) {
    if (!(dom.hi > dom.lo)) throw ArgumentError("empty function domain");
    if (nodes.size() < 2 || nodes.front() != dom.lo || nodes.back() != dom.hi)
        throw ArgumentError("integration nodes must span the domain");
    if (!std::is_sorted(nodes.begin(), nodes.end()))
        throw ArgumentError("integration nodes must be sorted");
    if (max_order < 2) throw ArgumentError("grid-integrated functions carry at least order 2");
    GridTables t;
    t.x = std::move(nodes);
    t.f.resize(t.x.size());
    t.df.resize(t.x.size());
    t.f[0] = f_lo;
    t.df[0] = df_lo;
    double a = second(t.x[0], 0).value();
    for (std::size_t i = 0; i + 1 < t.x.size(); ++i) {
        const double h = t.x[i + 1] - t.x[i];
        const double m = second(t.x[i] + 0.5 * h, 0).value();
        const double b = second(t.x[i + 1], 0).value();
        t.df[i + 1] = t.df[i] + h / 6.0 * (a + 4.0 * m + b);
        t.f[i + 1] = t.f[i] + t.df[i] * h + h * h / 6.0 * (a + 2.0 * m);
        a = b;
    }
    return SmoothFn(std::make_shared<GridImpl>(dom, std::move(second), std::move(t), max_order));
}

const GridTables* grid_tables(const SmoothFn& f) {
    auto* g = dynamic_cast<const GridImpl*>(&f.impl());
    return g ? &g->tables() : nullptr;
}

SmoothFn affine_compose(const SmoothFn& f, double a, double b) {
    if (a == 0.0) throw ArgumentError("affine_compose needs a nonzero slope");
    const Interval d = f.domain();
    double lo = (d.lo - b) / a, hi = (d.hi - b) / a;
    if (lo > hi) std::swap(lo, hi);
    return SmoothFn(std::make_shared<DerivedImpl>(
        Interval{lo, hi}, f.max_order(), f.kind(),
        [f, a, b](double x, int k) { return std::pow(a, k) * f.eval(a * x + b, k); },
        [f, a, b](double x, int n) { return f.jet(a * x + b, n).scaled(a); }));
}

SmoothFn add_linear(const SmoothFn& f, double s, double c0, double c1) {
    return SmoothFn(std::make_shared<DerivedImpl>(
        f.domain(), f.max_order(), f.kind(),
        [f, s, c0, c1](double x, int k) {
            const double v = s * f.eval(x, k);
            if (k == 0) return v + c0 + c1 * x;
            if (k == 1) return v + c1;
            return v;
        },
        [f, s, c0, c1](double x, int n) {
            Jet j = f.jet(x, n) * s;
            j.coeff(0) += c0 + c1 * x;
            if (n >= 1) j.coeff(1) += c1;
            return j;
        }));
}

SmoothFn restrict_to(const SmoothFn& f, Interval dom) {
    if (!(dom.hi > dom.lo)) throw ArgumentError("empty restriction interval");
    if (!f.domain().contains(dom, 1e-12 * std::max(1.0, dom.length())))
        throw ArgumentError("restriction interval outside function domain");
    return SmoothFn(std::make_shared<DerivedImpl>(
        dom, f.max_order(), f.kind(), [f](double x, int k) { return f.eval(x, k); },
        [f](double x, int n) { return f.jet(x, n); }));
}

SmoothFn derivative_fn(const SmoothFn& f, int order) {
    if (order < 0 || order > f.max_order())
        throw CapabilityError("derivative_fn order exceeds max_order");
    if (order == 0) return f;
    return SmoothFn(std::make_shared<DerivedImpl>(
        f.domain(), f.max_order() - order, FnKind::closed_form,
        [f, order](double x, int k) { return f.eval(x, k + order); },
        [f, order](double x, int n) {
            const Jet base = f.jet(x, n + order);
            Jet r(n);
            for (int j = 0; j <= n; ++j) {
                double c = base.coeff(j + order);
                for (int i = 1; i <= order; ++i) c *= j + i;
                r.coeff(j) = c;
            }
            return r;
        }));
}

NormReport cr_norm(const SmoothFn& f, int r, Interval interval, std::size_t samples) {
    if (r < 0 || r > f.max_order()) throw CapabilityError("cr_norm order exceeds max_order");
    if (!(interval.hi > interval.lo)) throw ArgumentError("cr_norm on an empty interval");
    NormReport rep;
    rep.r = r;
    rep.interval = interval;
    rep.per_order.assign(static_cast<std::size_t>(r) + 1, 0.0);
    for (double x : linspace(interval.lo, interval.hi, std::max<std::size_t>(samples, 2))) {
        for (int i = 0; i <= r; ++i) {
            double& m = rep.per_order[static_cast<std::size_t>(i)];
            m = std::max(m, std::abs(f.eval(x, i)));
        }
    }
    for (double m : rep.per_order) rep.value += m;
    return rep;
}

HolderReport holder_from_samples(const std::vector<double>& xs, const std::vector<double>& v,
                                 double alpha) {
    if (xs.size() != v.size() || xs.size() < 2)
        throw ArgumentError("holder samples need at least two matched points");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ArgumentError("holder exponent must lie in (0, 1]");
    HolderReport rep;
    rep.alpha = alpha;
    rep.window = {xs.front(), xs.back()};
    rep.x = xs[0];
    rep.y = xs[1];
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            const double q = std::abs(v[j] - v[i]) / std::pow(std::abs(xs[j] - xs[i]), alpha);
            if (q > rep.seminorm) {
                rep.seminorm = q;
                rep.x = xs[i];
                rep.y = xs[j];
            }
        }
    }
    return rep;
}

HolderReport holder_seminorm(const SmoothFn& f, int k, double alpha, Interval window,
                             std::size_t n) {
    if (k < 0 || k > f.max_order()) throw CapabilityError("holder order exceeds max_order");
    if (!(window.hi > window.lo)) throw ArgumentError("degenerate holder window");
    const auto xs = linspace(window.lo, window.hi, std::max<std::size_t>(n, 2));
    std::vector<double> v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) v[i] = f.eval(xs[i], k);
    HolderReport rep = holder_from_samples(xs, v, alpha);
    rep.k = k;
    return rep;
}

void write_csv(std::ostream& os, const SmoothFn& f, const std::vector<double>& xs, int orders) {
    if (orders > f.max_order()) throw CapabilityError("csv export order exceeds max_order");
    os << "x,f";
    for (int k = 1; k <= orders; ++k) os << ",d" << k;
    os << '\n';
    char buf[32];
    for (double x : xs) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        os << buf;
        for (int k = 0; k <= orders; ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", f.eval(x, k));
            os << ',' << buf;
        }
        os << '\n';
    }
}

} // namespace minklab
