#pragma once

#include <functional>
#include <string>
#include <vector>

#include "minklab/bump.hpp"
#include "minklab/smooth_fn.hpp"

namespace minklab {

using Sequence = std::function<double(int k)>;

/// c0 * 2^{-(c1 k + c2 k^2)}.
struct GaussExp {
    double c0 = 1.0, c1 = 1.0, c2 = 0.0;
    double operator()(int k) const;
};

inline double t_k(int k) { return std::ldexp(1.0, -2 * k); }

/// The family f_k used in the patching: jets of f_k'' and values of f_k'.
struct ProfileFamily {
    std::string name;
    std::function<Jet(int k, double s, int degree)> second;
    std::function<double(int k, double s)> first;
};

/// f_k(x) = a_k^2 x^2 / 2.
ProfileFamily quadratic_family(Sequence a);
/// f_k(x) = x^4 / 4 for every k.
ProfileFamily quartic_family();

struct BomanInput {
    Sequence b;
    ProfileFamily family;
};

struct SuperExpCheck {
    double gamma = 0.0;
    double tail_slope = 0.0; ///< least-squares slope of log2(2^{k gamma} c_k) over the tail half
    bool pass = false;
};

/// Finite proxy for 2^{k gamma} c_k -> 0: the log sequence has negative
/// least-squares slope over the second half of the stored indices and ends
/// below its maximum.  Fewer than three terms pass trivially.
SuperExpCheck superexp_check(const std::vector<int>& k, const std::vector<double>& c, double gamma);

struct BomanValidation {
    int k_lo = 0, k_hi = 0;
    bool monotone_2k_b = true;        ///< 2^k b_k strictly decreasing on [k_lo - 1, k_hi]
    int first_monotone_violation = -1;
    std::vector<SuperExpCheck> superexp;
    bool superexp_pass = true;
    std::vector<double> M;            ///< M_r = sup_{k, |s| <= t_k} |f_k^(r)| for r = 2..max_order
    bool strictly_convex = true;      ///< f_k'' > 0 at every sample (s = 0 included)
    double min_second = 0.0;
    bool pass() const { return monotone_2k_b && superexp_pass; }
};

BomanValidation validate_boman_input(const BomanInput& in, int k_lo, int k_hi,
                                     const std::vector<double>& gammas = {1, 2, 4, 8},
                                     int max_order = kDefaultMaxOrder);

struct BomanOptions {
    int k_min = 1;                    ///< smallest candidate K (uses b_{k_min - 1})
    std::size_t cells_per_shell = 2048;
    std::size_t quad_points = 4096;
    int max_order = kDefaultMaxOrder;
};

struct BomanOutput {
    SmoothFn f;
    int K = 0, k_min = 0, k_max = 0;
    /// Indexed by k - k_min for k in [k_min, k_max].
    std::vector<double> b, A, B, D, alpha;
    double B_tail = 0.0, D_tail = 0.0, alpha_tail = 0.0;
    double psi_integral = 0.0;
    /// f'(t_k) - b_k for k in [K, k_max].
    std::vector<double> fprime_residual;
    /// f'' vanishes identically on [0, flat_below].
    double flat_below = 0.0;

    double at(const std::vector<double>& v, int k) const {
        return v.at(static_cast<std::size_t>(k - k_min));
    }
};

/// Builds f with f'' = sum_{k=K}^{k_max} [b_k f_k''(x - t_k) Psi_{2k} + alpha_k Psi_{2k-1}]
/// + alpha_tail Psi_{2 k_max + 1}, f(0) = 0 = f'(0), on [0, 3 t_K].  The tail
/// term restores f'(t_{k_max}) = b_{k_max} after truncation.
BomanOutput build_boman(const BomanInput& in, int k_max, const BomanOptions& opt = {});

/// f built on a K fixed by another construction (used for the g-side profile
/// so that f and g share windows); throws if some alpha_k <= 0.
BomanOutput build_boman_fixed_K(const BomanInput& in, int K, int k_max, const BomanOptions& opt = {});

struct PliableTerm {
    int index = 0;
    double c = 0.0;
    SmoothFn g;
    Interval support;
};

struct PliableSeries {
    std::vector<PliableTerm> terms; ///< sorted by index
    double base_point = 0.0;
    Interval J;
};

/// Series for f'' of a Boman construction: index 2k carries b_k and
/// f_k''(x - t_k) Psi_{2k}, index 2k - 1 carries alpha_k and Psi_{2k-1}.
PliableSeries boman_series(const BomanOutput& out, const BomanInput& in);

struct PliableReport {
    std::vector<SuperExpCheck> cond_i;
    bool i_pass = true;
    std::vector<double> growth_rate; ///< per r: max successive log2 ratio of ||g||_r
    bool ii_pass = true;
    bool supports_avoid_base = true;
    double L = 0.0;                  ///< least L satisfying (iii) on the epsilon grid
    std::size_t max_J_eps = 0;
    bool iii_pass = true;
    std::vector<std::string> violations;
    bool pass() const { return i_pass && ii_pass && iii_pass && supports_avoid_base; }
};

/// Structural checks of conditions (i)-(iii).  When `L_limit` > 0 it is the
/// configured constant that (iii) must respect; otherwise the least L is
/// reported and (iii) only requires it to be finite.
PliableReport check_pliable(const PliableSeries& ps, int r_max, const std::vector<double>& eps_grid,
                            const std::vector<double>& gammas = {1, 2, 4, 8}, double L_limit = 0.0);

struct PartialSumReport {
    int l = 0, l2 = 0, r = 0;
    double value = 0.0; ///< ||S_l2 - S_l||_r
};

/// C^r norm of the terms with l < index <= l2, sampled on each support.
PartialSumReport partial_sum_convergence(const PliableSeries& ps, int r, int l, int l2,
                                         std::size_t per_term = 257);

} // namespace minklab
