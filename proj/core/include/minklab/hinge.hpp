#pragma once

#include <string>
#include <vector>

#include "minklab/rotated_graph.hpp"
#include "minklab/smooth_fn.hpp"

namespace minklab {

/// f'' = A exp(-s / x) on [0, tau], f(0) = 0 = f'(0): flat at 0 to all orders,
/// strictly convex on (0, tau].
SmoothFn exp_flat_profile(double A = 20.0, double s = 1e-6, double tau = 1.0,
                          std::size_t per_shell = 256);

/// Two segments of lengths l and r meeting at `apex` with interior angle alpha.
struct Hinge {
    double l = 0.0, r = 0.0, alpha = 0.0;
    double apex_x = 0.0, apex_y = 0.0;
    double left_x = 0.0, left_y = 0.0, right_x = 0.0, right_y = 0.0;
};

struct Certificate {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct Profiles {
    RotatedFn u, v; ///< f_u = u.f_phi, f_v = v.f_phi, both defined on [-d, d]
};

/// f_u: f shifted left by d / cos(gamma) and rotated clockwise by gamma;
/// f_v: the mirror construction.  Needs 4d < |domain|, 0 < gamma < pi/3.
Profiles place_profiles(const SmoothFn& f, double d, double gamma);

struct EpsilonSolve {
    double eps = 0.0;
    double residual = 0.0;     ///< f'(4 eps) - tan(gamma)
    double fu_side = 0.0;      ///< f_u'(2 eps - d), must be < 0
    double fv_side = 0.0;      ///< f_v'(d - 2 eps), must be > 0
};

/// eps with f'(4 eps) = tan(gamma); checks 4 eps < d and the side conditions.
EpsilonSolve solve_epsilon(const SmoothFn& f, const Profiles& p, double d, double gamma);

/// Nodes on [-d, d], dyadically refined toward both ends down to x0.
std::vector<double> hinge_nodes(double d, double x0, std::size_t per_shell);

struct BEpsSolve {
    double b_eps = 0.0;
    double I_u = 0.0, I_v = 0.0, I_0 = 0.0; ///< integrals of f_u'' Phi_u, f_v'' Phi_v, Phi_0
    double residual = 0.0;                    ///< F'(d) recomputed from the linear equation
};

/// Solves F'(d) = f_v'(d) for b_eps with the same quadrature used to build F.
BEpsSolve solve_b_eps(const Profiles& p, double eps, double d, const std::vector<double>& nodes);

struct HingeOptions {
    std::size_t per_shell = 256;
    std::size_t check_samples = 257;
    int max_order = kDefaultMaxOrder;
};

struct SmoothingResult {
    SmoothFn F;
    double d = 0.0, gamma = 0.0, epsilon = 0.0, b_eps = 0.0;
    Profiles profiles;
    EpsilonSolve eps_solve;
    BEpsSolve b_solve;
    Hinge hinge_out;
    std::vector<Certificate> certificates;
    bool all_pass = false;

    const SmoothFn& f_u() const { return profiles.u.f_phi; }
    const SmoothFn& f_v() const { return profiles.v.f_phi; }
};

/// F'' = f_u'' Phi_u + f_v'' Phi_v + b_eps Phi_0 on [-d, d] with
/// F(-d) = f_u(-d), F'(-d) = f_u'(-d), plus the full certificate suite.
SmoothingResult build_smoothing(const SmoothFn& f, double d, double gamma,
                                const HingeOptions& opt = {});

struct ScheduleOptions {
    double d1 = 0.05;         ///< d_m = d1 q^{m-1}
    double q = 1.0 / 3.0;
    double ratio = 1.0 / 3.0; ///< fraction of each Gauss-image gap removed per step
    int r_max = 2;
    double cap_factor = 2.0;
    int max_halvings = 40;
    int max_n = 4096;
    HingeOptions hinge;
};

struct ScheduleResult {
    int n = 0;
    std::vector<double> d, gamma, gamma_admissible, shape;
    /// results[p][m - 1] for profile p.
    std::vector<std::vector<SmoothingResult>> results;
    /// cap[p][r] and measured norms[p][m - 1][r].
    std::vector<std::vector<double>> cap;
    std::vector<std::vector<std::vector<double>>> norms;
    /// partial sums of 2^{m-1} (l_m + r_m) per profile.
    std::vector<std::vector<double>> side_partial_sums;
    bool caps_hold = true;
    bool certificates_pass = true;
};

/// gamma_m = (pi / n) * shape_m with shape_m = ratio ((1 - ratio)/2)^{m-1} / 2,
/// so that sum_m 2^m gamma_m = pi / n; n is the least integer >= 2 for which
/// every profile's smoothings keep their C^r norms under the cap.
ScheduleResult schedule_smoothings(const std::vector<SmoothFn>& profiles, int m_max,
                                   const ScheduleOptions& opt = {});

/// Norms sum_{i<=r} max |F^(i)| for r = 0..r_max on [-d, d].
std::vector<double> smoothing_norms(const SmoothingResult& s, int r_max, std::size_t samples = 2049);

} // namespace minklab
