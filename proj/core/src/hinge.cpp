#include "minklab/hinge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "minklab/bump.hpp"

namespace minklab {

SmoothFn exp_flat_profile(double A, double s, double tau, std::size_t per_shell) {
    if (!(A > 0.0 && s > 0.0 && tau > 0.0)) throw ArgumentError("exp_flat needs A, s, tau > 0");
    JetFn second = [A, s](double x, int n) {
        if (!(x > 0.0) || s / x > 745.0) return Jet(n, 0.0);
        return exp(reciprocal(Jet::variable(n, x)) * (-s)) * A;
    };
    // Below s/50 the second derivative is under 1e-21 A: the cell [0, s/50]
    // contributes nothing measurable.
    const double x0 = std::min(s / 50.0, tau / 4.0);
    return integrate_twice({0.0, tau}, second, dyadic_nodes(x0, tau, per_shell), 0.0, 0.0);
}

Profiles place_profiles(const SmoothFn& f, double d, double gamma) {
    const Interval dom = f.domain();
    if (dom.lo != 0.0) throw ArgumentError("hinge profile must be flat at domain start 0");
    if (!(d > 0.0 && 4.0 * d < dom.hi)) throw ArgumentError("hinge needs 0 < 4d < tau");
    if (!(gamma > 0.0)) throw ArgumentError("hinge angle gamma must be positive");
    if (!(gamma < std::numbers::pi / 3.0)) throw ArgumentError("hinge angle gamma must be below pi/3");
    const double shift = d / std::cos(gamma);
    Profiles p;
    p.u = rotate_graph(affine_compose(f, 1.0, shift), -gamma);
    p.v = rotate_graph(affine_compose(f, -1.0, shift), gamma);
    const double slack = 1e-12;
    if (!p.u.f_phi.domain().contains(Interval{-d, d}, slack) ||
        !p.v.f_phi.domain().contains(Interval{-d, d}, slack))
        throw ArgumentError("rotated profiles do not cover [-d, d]");
    return p;
}

EpsilonSolve solve_epsilon(const SmoothFn& f, const Profiles& p, double d, double gamma) {
    const double tg = std::tan(gamma);
    const Interval dom = f.domain();
    if (!(tg < f.eval(dom.hi, 1)))
        throw ConstructionError("gamma too large: tan(gamma) outside the range of f'");
    const double x = bisect([&](double t) { return f.eval(t, 1) - tg; }, dom.lo, dom.hi);
    EpsilonSolve e;
    e.eps = 0.25 * x;
    e.residual = f.eval(x, 1) - tg;
    if (!(4.0 * e.eps < d)) throw ConstructionError("gamma not small enough: 4 eps >= d");
    e.fu_side = p.u.f_phi.eval(2.0 * e.eps - d, 1);
    e.fv_side = p.v.f_phi.eval(d - 2.0 * e.eps, 1);
    if (!(e.fu_side < 0.0 && e.fv_side > 0.0))
        throw ConstructionError("gamma not small enough: f_u'(2eps-d) < 0 < f_v'(d-2eps) fails");
    return e;
}

std::vector<double> hinge_nodes(double d, double x0, std::size_t per_shell) {
    const auto half = dyadic_nodes(x0, d, per_shell);
    std::vector<double> nodes;
    nodes.reserve(2 * half.size());
    for (double v : half) nodes.push_back(-d + v);
    for (auto it = half.rbegin(); it != half.rend(); ++it) {
        const double x = d - *it;
        if (x > nodes.back()) nodes.push_back(x);
    }
    nodes.front() = -d;
    nodes.back() = d;
    return nodes;
}

namespace {

Jet second_of(const SmoothFn& f, double x, int n) {
    const Jet j = f.jet(x, n + 2);
    Jet r(n);
    for (int k = 0; k <= n; ++k) r.coeff(k) = j.coeff(k + 2) * (k + 1.0) * (k + 2.0);
    return r;
}

struct Terms {
    Profiles p;
    double eps, d;

    Jet profile_part(double x, int n) const {
        Jet s(n, 0.0);
        const double uu = (d + x) / (2.0 * eps);
        if (uu < 1.0) s += second_of(p.u.f_phi, x, n) * phi_jet(uu, n).scaled(0.5 / eps);
        const double uv = (d - x) / (2.0 * eps);
        if (uv < 1.0) s += second_of(p.v.f_phi, x, n) * phi_jet(uv, n).scaled(-0.5 / eps);
        return s;
    }

    Jet u_part(double x, int n) const {
        const double uu = (d + x) / (2.0 * eps);
        if (!(uu < 1.0)) return Jet(n, 0.0);
        return second_of(p.u.f_phi, x, n) * phi_jet(uu, n).scaled(0.5 / eps);
    }

    Jet v_part(double x, int n) const {
        const double uv = (d - x) / (2.0 * eps);
        if (!(uv < 1.0)) return Jet(n, 0.0);
        return second_of(p.v.f_phi, x, n) * phi_jet(uv, n).scaled(-0.5 / eps);
    }

    Jet center(double x, int n) const {
        const double w0 = d - std::abs(x);
        if (w0 <= eps) return Jet(n, 0.0);
        if (w0 >= 2.0 * eps) return Jet(n, 1.0);
        Jet w = Jet::variable(n, 0.0) * (x > 0.0 ? -1.0 : 1.0);
        w += w0;
        const Jet u = reciprocal(w) * eps;
        return compose(phi_jet(u.value(), n), u);
    }
};

double cell_simpson(const std::vector<double>& nodes, const std::function<double(double)>& g) {
    double s = 0.0, a = g(nodes[0]);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double h = nodes[i + 1] - nodes[i];
        const double m = g(nodes[i] + 0.5 * h), b = g(nodes[i + 1]);
        s += h / 6.0 * (a + 4.0 * m + b);
        a = b;
    }
    return s;
}

double flat_radius(const SmoothFn& f) {
    const Interval dom = f.domain();
    auto g = [&](double x) { return f.eval(x, 2) >= 1e-300 ? 1.0 : -1.0; };
    if (g(dom.lo) > 0.0) return 0.0;
    if (g(dom.hi) < 0.0) return dom.hi;
    return bisect(g, dom.lo, dom.hi);
}

Certificate cert(std::string name, double measured, double bound, bool pass) {
    return Certificate{std::move(name), measured, bound, pass};
}

} // namespace

BEpsSolve solve_b_eps(const Profiles& p, double eps, double d, const std::vector<double>& nodes) {
    const Terms t{p, eps, d};
    BEpsSolve r;
    r.I_u = cell_simpson(nodes, [&](double x) { return t.u_part(x, 0).value(); });
    r.I_v = cell_simpson(nodes, [&](double x) { return t.v_part(x, 0).value(); });
    r.I_0 = cell_simpson(nodes, [&](double x) { return t.center(x, 0).value(); });
    if (!(r.I_0 > 0.0)) throw ArgumentError("integral of Phi_0 is not positive");
    const double start = p.u.f_phi.eval(-d, 1), target = p.v.f_phi.eval(d, 1);
    r.b_eps = (target - start - r.I_u - r.I_v) / r.I_0;
    r.residual = std::abs(start + r.I_u + r.I_v + r.b_eps * r.I_0 - target);
    if (!(r.b_eps > 0.0))
        throw ConstructionError("b_eps = " + std::to_string(r.b_eps) + " is not positive");
    return r;
}

SmoothingResult build_smoothing(const SmoothFn& f, double d, double gamma, const HingeOptions& opt) {
    SmoothingResult res;
    res.d = d;
    res.gamma = gamma;
    res.profiles = place_profiles(f, d, gamma);
    res.eps_solve = solve_epsilon(f, res.profiles, d, gamma);
    const double eps = res.epsilon = res.eps_solve.eps;
    const double flat = flat_radius(f);
    const double x0 = flat > 0.0 ? std::max(0.25 * flat, d * 0x1p-40) : d * 0x1p-24;
    const auto nodes = hinge_nodes(d, std::min(x0, 0.25 * eps), opt.per_shell);
    res.b_solve = solve_b_eps(res.profiles, eps, d, nodes);
    const double b = res.b_eps = res.b_solve.b_eps;

    auto terms = std::make_shared<Terms>(Terms{res.profiles, eps, d});
    JetFn second = [terms, b](double x, int n) {
        return terms->profile_part(x, n) + terms->center(x, n) * b;
    };
    const SmoothFn& fu = res.f_u();
    const SmoothFn& fv = res.f_v();
    res.F = integrate_twice({-d, d}, second, nodes, fu(-d), fu.eval(-d, 1), opt.max_order);
    const SmoothFn& F = res.F;
    const double tg = std::tan(gamma);
    auto& C = res.certificates;

    C.push_back(cert("epsilon_residual", std::abs(res.eps_solve.residual), 1e-12,
                     std::abs(res.eps_solve.residual) < 1e-12));
    C.push_back(cert("fu_side_negative", res.eps_solve.fu_side, 0.0, res.eps_solve.fu_side < 0.0));
    C.push_back(cert("fv_side_positive", res.eps_solve.fv_side, 0.0, res.eps_solve.fv_side > 0.0));
    const double f2l = std::abs(F.eval(-d, 2)), f2r = std::abs(F.eval(d, 2));
    C.push_back(cert("F2_at_minus_d", f2l, 0.0, f2l == 0.0));
    C.push_back(cert("F2_at_plus_d", f2r, 0.0, f2r == 0.0));
    double min_inner = INFINITY;
    const double skip = 4.0 * flat;
    for (double x : nodes) {
        if (std::abs(x + d) <= skip || std::abs(x - d) <= skip || std::abs(x) == d) continue;
        min_inner = std::min(min_inner, F.eval(x, 2));
    }
    C.push_back(cert("F2_positive_inside", min_inner, 0.0, min_inner > 0.0));
    const double rl = std::abs(F.eval(-d, 1) + tg), rr = std::abs(F.eval(d, 1) - tg);
    C.push_back(cert("F1_at_minus_d", rl, 1e-12, rl < 1e-12));
    C.push_back(cert("F1_at_plus_d", rr, 1e-12, rr < 1e-12));
    C.push_back(cert("b_eps_linear_residual", res.b_solve.residual, 1e-12, res.b_solve.residual < 1e-12));

    double match = 0.0, lo = INFINITY, hi = -INFINITY;
    for (double x : linspace(-d, -d + eps, opt.check_samples)) match = std::max(match, std::abs(F(x) - fu(x)));
    for (double x : linspace(d - eps, d, opt.check_samples)) {
        const double v = F(x) - fv(x);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    C.push_back(cert("F_equals_fu_near_minus_d", match, 1e-10, match < 1e-10));
    C.push_back(cert("F_minus_fv_const_near_d", hi - lo, 1e-10, hi - lo < 1e-10));
    C.push_back(cert("b_eps_positive", b, 0.0, b > 0.0));
    C.push_back(cert("b_eps_below_2tan_over_d", b, 2.0 * tg / d, b < 2.0 * tg / d));
    C.push_back(cert("b_eps_below_tan_over_d_minus_2eps", b, tg / (d - 2.0 * eps), b <= tg / (d - 2.0 * eps)));

    double max_slope = 0.0;
    for (double v : grid_tables(F)->df) max_slope = std::max(max_slope, std::abs(v));
    C.push_back(cert("max_abs_F1_below_7tan", max_slope, 7.0 * tg, max_slope < 7.0 * tg));
    C.push_back(cert("inequality_u", res.b_solve.I_u, -fu.eval(-d, 1), res.b_solve.I_u < -fu.eval(-d, 1)));
    C.push_back(cert("inequality_v", res.b_solve.I_v, fv.eval(d, 1), res.b_solve.I_v < fv.eval(d, 1)));

    Hinge& H = res.hinge_out;
    const double yl = F(-d), yr = F(d), sl = F.eval(-d, 1), sr = F.eval(d, 1);
    H.left_x = -d;
    H.left_y = yl;
    H.right_x = d;
    H.right_y = yr;
    H.apex_x = (yr - yl - sr * d - sl * d) / (sl - sr);
    H.apex_y = yl + sl * (H.apex_x + d);
    H.l = std::hypot(H.apex_x + d, H.apex_y - yl);
    H.r = std::hypot(d - H.apex_x, yr - H.apex_y);
    H.alpha = std::numbers::pi - (std::atan(sr) - std::atan(sl));
    const double side_bound = 4.0 * d / std::cos(gamma);
    C.push_back(cert("hinge_side_sum", H.l + H.r, side_bound, H.l + H.r <= side_bound));

    res.all_pass = std::all_of(C.begin(), C.end(), [](const Certificate& c) { return c.pass; });
    return res;
}

std::vector<double> smoothing_norms(const SmoothingResult& s, int r_max, std::size_t samples) {
    const NormReport n = cr_norm(s.F, r_max, {-s.d, s.d}, samples);
    std::vector<double> out;
    double acc = 0.0;
    for (double v : n.per_order) out.push_back(acc += v);
    return out;
}

ScheduleResult schedule_smoothings(const std::vector<SmoothFn>& profiles, int m_max,
                                   const ScheduleOptions& opt) {
    if (profiles.empty()) throw ArgumentError("schedule needs at least one profile");
    if (m_max < 1) throw ArgumentError("schedule needs m_max >= 1");
    if (!(opt.ratio > 0.0 && opt.ratio < 1.0)) throw ArgumentError("removal ratio must lie in (0, 1)");
    const double pi = std::numbers::pi;
    ScheduleResult out;
    const std::size_t P = profiles.size(), M = static_cast<std::size_t>(m_max);
    for (int m = 1; m <= m_max; ++m) {
        out.shape.push_back(opt.ratio * std::pow(0.5 * (1.0 - opt.ratio), m - 1) / 2.0);
        out.d.push_back(opt.d1 * std::pow(opt.q, m - 1));
    }
    out.cap.assign(P, {});

    // Builds every profile at (d_m, gamma); empty when any build or cap fails.
    auto attempt = [&](std::size_t mi, double gamma, std::vector<SmoothingResult>& built,
                       std::vector<std::vector<double>>& norms) {
        built.clear();
        norms.clear();
        for (std::size_t p = 0; p < P; ++p) {
            try {
                SmoothingResult s = build_smoothing(profiles[p], out.d[mi], gamma, opt.hinge);
                if (!s.all_pass) return false;
                norms.push_back(smoothing_norms(s, opt.r_max));
                built.push_back(std::move(s));
            } catch (const ConstructionError&) {
                return false;
            }
        }
        for (std::size_t p = 0; p < P; ++p) {
            if (out.cap[p].empty()) continue;
            for (int r = 0; r <= opt.r_max; ++r)
                if (norms[p][static_cast<std::size_t>(r)] > out.cap[p][static_cast<std::size_t>(r)]) return false;
        }
        return true;
    };

    std::vector<SmoothingResult> built;
    std::vector<std::vector<double>> norms;
    for (std::size_t mi = 0; mi < M; ++mi) {
        double gamma = 0.5 * pi * out.shape[mi];
        bool ok = false;
        for (int h = 0; h <= opt.max_halvings && !ok; ++h, gamma *= 0.5) {
            ok = attempt(mi, gamma, built, norms);
            if (ok && out.cap[0].empty())
                for (std::size_t p = 0; p < P; ++p) {
                    for (double v : norms[p]) out.cap[p].push_back(opt.cap_factor * v);
                }
            if (ok) out.gamma_admissible.push_back(gamma);
        }
        if (!ok)
            throw ConstructionError("schedule failed: no admissible gamma at step " + std::to_string(mi + 1));
    }

    int n = 2;
    for (std::size_t mi = 0; mi < M; ++mi)
        n = std::max(n, static_cast<int>(std::ceil(pi * out.shape[mi] / out.gamma_admissible[mi] - 1e-12)));
    for (; n <= opt.max_n; ++n) {
        out.results.assign(P, {});
        out.norms.assign(P, {});
        out.gamma.clear();
        bool ok = true;
        for (std::size_t mi = 0; mi < M && ok; ++mi) {
            const double gamma = pi / n * out.shape[mi];
            ok = attempt(mi, gamma, built, norms);
            if (!ok) break;
            out.gamma.push_back(gamma);
            for (std::size_t p = 0; p < P; ++p) {
                out.results[p].push_back(built[p]);
                out.norms[p].push_back(norms[p]);
            }
        }
        if (ok) {
            out.n = n;
            break;
        }
    }
    if (out.n == 0) throw ConstructionError("schedule failed: no integer n up to max_n");
    out.side_partial_sums.assign(P, {});
    for (std::size_t p = 0; p < P; ++p) {
        double acc = 0.0;
        for (std::size_t mi = 0; mi < M; ++mi) {
            const Hinge& H = out.results[p][mi].hinge_out;
            acc += std::ldexp(H.l + H.r, static_cast<int>(mi));
            out.side_partial_sums[p].push_back(acc);
            out.certificates_pass = out.certificates_pass && out.results[p][mi].all_pass;
        }
    }
    return out;
}

} // namespace minklab
