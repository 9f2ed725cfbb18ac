#pragma once

// Independent reference computations and small generators shared by the
// unit tests.  Nothing here calls into the library's numerics.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

/// Deterministic generator for property tests.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
};

/// Random polynomial that is convex on [-1, 1]: c2 x^2 + c4 x^4 plus an
/// affine part and a small cubic that cannot beat the quadratic term.
inline std::vector<double> convex_poly(Gen& g) {
    const double c2 = g.uniform(0.5, 3.0);
    const double c4 = g.uniform(0.0, 1.0);
    const double c3 = g.uniform(-0.3, 0.3) * c2;
    return {g.uniform(-1, 1), g.uniform(-1, 1), c2, c3, c4};
}

inline double poly_eval(const std::vector<double>& c, double x, int order = 0) {
    double s = 0.0;
    for (std::size_t k = static_cast<std::size_t>(order); k < c.size(); ++k) {
        double f = 1.0;
        for (int j = 0; j < order; ++j) f *= static_cast<double>(k - static_cast<std::size_t>(j));
        s += c[k] * f * std::pow(x, static_cast<double>(k) - order);
    }
    return s;
}

/// Brute-force inf over y of f(y) + g(x - y) on a fine grid with a local
/// golden polish; independent of the library's scan.
template <class F, class G>
double brute_infconv(F&& f, G&& g, double x, double ylo, double yhi, int n = 20001) {
    double best = INFINITY, by = ylo;
    for (int i = 0; i < n; ++i) {
        const double y = ylo + (yhi - ylo) * i / (n - 1);
        const double v = f(y) + g(x - y);
        if (v < best) { best = v; by = y; }
    }
    const double h = (yhi - ylo) / (n - 1);
    double a = std::max(ylo, by - h), b = std::min(yhi, by + h);
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 100; ++it) {
        const double c = b - r * (b - a), d = a + r * (b - a);
        if (f(c) + g(x - c) < f(d) + g(x - d)) b = d; else a = c;
    }
    const double y = 0.5 * (a + b);
    return std::min(best, f(y) + g(x - y));
}

/// Smoothstep reference: e^{-1/u} / (e^{-1/u} + e^{-1/(1-u)}).
inline double smoothstep(double u) {
    if (u <= 0) return 0.0;
    if (u >= 1) return 1.0;
    const double a = std::exp(-1.0 / u), b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

} // namespace oracle
