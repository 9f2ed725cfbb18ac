#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "minklab/error.hpp"

namespace minklab {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const noexcept { return hi - lo; }
    double mid() const noexcept { return 0.5 * (lo + hi); }
    bool contains(double x, double slack = 0.0) const noexcept {
        return x >= lo - slack && x <= hi + slack;
    }
    bool contains(const Interval& o, double slack = 0.0) const noexcept {
        return o.lo >= lo - slack && o.hi <= hi + slack;
    }
};

/// n equally spaced points including both endpoints (n >= 2).
std::vector<double> linspace(double a, double b, std::size_t n);

/// Composite Simpson rule with n (even, >= 2) subintervals.
template <class F>
double simpson(F&& f, double a, double b, std::size_t n) {
    if (n < 2) n = 2;
    if (n % 2) ++n;
    const double h = (b - a) / static_cast<double>(n);
    double s = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i)
        s += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
    return s * h / 3.0;
}

/// Five-point Gauss-Legendre rule on [a, b].
template <class F>
double gauss5(F&& f, double a, double b) {
    static constexpr std::array<double, 5> x{0.0, -0.5384693101056831, 0.5384693101056831,
                                            -0.9061798459386640, 0.9061798459386640};
    static constexpr std::array<double, 5> w{0.5688888888888889, 0.4786286704993665,
                                            0.4786286704993665, 0.2369268850561891,
                                            0.2369268850561891};
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < 5; ++i) s += w[i] * f(c + r * x[i]);
    return s * r;
}

/// Bisection for a sign change of f on [a, b]. Stops when the bracket can no
/// longer shrink or its width drops below xtol.
template <class F>
double bisect(F&& f, double a, double b, double xtol = 0.0) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw BracketError("no sign change on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    for (int it = 0; it < 400; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b || std::abs(b - a) <= xtol) break;
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return std::abs(fa) <= std::abs(f(b)) ? a : b;
}

/// Golden-section minimisation of a unimodal f on [a, b].
template <class F>
double golden_min(F&& f, double a, double b, double xtol) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
        if (c >= d) break;
    }
    return 0.5 * (a + b);
}

} // namespace minklab
