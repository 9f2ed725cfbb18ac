#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "minklab/smooth_fn.hpp"

namespace minklab {

enum class Route { direct_min, conjugate };
const char* to_string(Route r);

struct InfConvOptions {
    std::size_t grid_n = 1025;          ///< output samples
    std::size_t scan_n = 1024;          ///< coarse scan before golden section
    std::size_t primal_n = (1u << 14) + 1; ///< primal samples for the conjugate route
    double convexity_tol = 1e-9;
};

struct InfConvResult {
    Route route = Route::direct_min;
    /// The infimal convolution on the output interval.  The direct route
    /// re-minimises on every evaluation and carries jets; the conjugate route
    /// evaluates the merged lower hull (max_order 1: value and hull slope).
    SmoothFn h;
    std::vector<double> x, h_values, dh, mu;
    std::vector<std::uint8_t> boundary;
};

/// Throws ValidationError when discrete second differences of f on `n`
/// samples dip below -tol * (1 + max|f|).
void require_convex(const SmoothFn& f, const char* name, double tol, std::size_t n = 1024);

/// Feasible y for a given x: f.domain intersected with x - g.domain.
Interval feasible_window(const SmoothFn& f, const SmoothFn& g, double x);

/// Root of y -> f'(y) - g'(x - y) by bisection over the feasible window.
double minimizer_map(const SmoothFn& f, const SmoothFn& g, double x);

/// Pointwise minimiser with boundary handling: scans, refines by golden
/// section, then polishes by derivative bisection when f', g' exist.
struct MinPoint {
    double y = 0.0;
    double value = 0.0;
    bool boundary = false;
};
MinPoint minimize_at(const SmoothFn& f, const SmoothFn& g, double x, std::size_t scan_n = 1024);

/// h as a SmoothFn evaluated by pointwise minimisation; derivatives of
/// order >= 2 come from implicit differentiation of f'(y) = g'(x - y).
SmoothFn infconv_fn(const SmoothFn& f, const SmoothFn& g, Interval out, std::size_t scan_n = 1024);

/// Jet of h at x (degree <= min(f, g) max_order), given the minimiser.
Jet infconv_jet(const SmoothFn& f, const SmoothFn& g, double x, double y, int degree);

InfConvResult infconv_direct(const SmoothFn& f, const SmoothFn& g, Interval out,
                             const InfConvOptions& opt = {});

/// Piecewise-linear convex conjugate of sampled data: on slope interval
/// [slopes[j-1], slopes[j]] the maximiser of s*x - f(x) is vertex j.
struct DiscreteConjugate {
    std::vector<double> vx, vf;   ///< lower-hull vertices (primal)
    std::vector<double> slopes;   ///< edge slopes, size vx.size() - 1
    std::vector<double> vx_first; ///< after add_conjugates: first summand's share of vx

    /// f*(s) = max_j (s vx[j] - vf[j]).
    double eval(double s) const;
};

/// Linear-time conjugate from samples sorted by x.
DiscreteConjugate discrete_conjugate(const std::vector<double>& x, const std::vector<double>& f);
/// f* + g* as a conjugate (slope merge); its vertices are sums of vertices.
DiscreteConjugate add_conjugates(const DiscreteConjugate& a, const DiscreteConjugate& b);
/// (f*)* at x by interpolating the primal hull; nullopt-like NaN outside.
double back_conjugate(const DiscreteConjugate& c, double x);

InfConvResult infconv_conjugate(const SmoothFn& f, const SmoothFn& g, Interval out,
                                const InfConvOptions& opt = {});

struct SmoothnessDiag {
    double x = 0.0, mu = 0.0;
    double hess_f = 0.0, hess_g = 0.0;
    double j_mu = 0.0;      ///< g'' / (f'' + g'') at the matched pair
    double hess_h = 0.0;    ///< Richardson second difference of h values
    double dh = 0.0;        ///< Richardson first difference of h values
    double j_mu_fd = 0.0;   ///< Richardson first difference of mu
    double grad_f = 0.0, grad_g = 0.0; ///< f'(mu), g'(x - mu)
    double res_grad = 0.0;  ///< max relative mismatch of h' with f'(mu), g'(x-mu)
    double res_hess = 0.0;  ///< max relative mismatch of h'' with f'' j, g''(1-j)
    double res_jmu = 0.0;   ///< relative mismatch of j_mu with the difference quotient
};

/// Matched derivatives at x and both identities of the Hessian formula.
/// `step` is the finite-difference step used for the independent checks.
SmoothnessDiag smoothness_diag(const SmoothFn& f, const SmoothFn& g, double x, double step = 1e-3);

/// CSV columns: x, h, mu, h', h'', j_mu, boundary_flag.  h'' and j_mu are
/// evaluated where the matched pair is nondegenerate, else written as nan.
void write_infconv_csv(std::ostream& os, const InfConvResult& r, const SmoothFn& f,
                       const SmoothFn& g);

} // namespace minklab
