#include "minklab/boman.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace minklab {

double GaussExp::operator()(int k) const {
    const double kk = static_cast<double>(k);
    return c0 * std::exp2(-(c1 * kk + c2 * kk * kk));
}

ProfileFamily quadratic_family(Sequence a) {
    ProfileFamily p;
    p.name = "quadratic";
    p.second = [a](int k, double, int n) {
        const double ak = a(k);
        return Jet(n, ak * ak);
    };
    p.first = [a](int k, double s) {
        const double ak = a(k);
        return ak * ak * s;
    };
    return p;
}

ProfileFamily quartic_family() {
    ProfileFamily p;
    p.name = "quartic";
    p.second = [](int, double s, int n) {
        const Jet v = Jet::variable(n, s);
        return v * v * 3.0;
    };
    p.first = [](int, double s) { return s * s * s; };
    return p;
}

SuperExpCheck superexp_check(const std::vector<int>& k, const std::vector<double>& c, double gamma) {
    SuperExpCheck r;
    r.gamma = gamma;
    if (k.size() != c.size()) throw ArgumentError("superexp_check needs matched sequences");
    if (k.size() < 3) {
        r.pass = true;
        return r;
    }
    std::vector<double> q(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!(c[i] > 0.0)) return r;
        q[i] = gamma * k[i] + std::log2(c[i]);
    }
    const std::size_t start = q.size() / 2;
    const double n = static_cast<double>(q.size() - start);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = start; i < q.size(); ++i) {
        const double x = k[i];
        sx += x;
        sy += q[i];
        sxx += x * x;
        sxy += x * q[i];
    }
    const double den = n * sxx - sx * sx;
    r.tail_slope = den > 0 ? (n * sxy - sx * sy) / den : 0.0;
    const double qmax = *std::max_element(q.begin(), q.end());
    r.pass = r.tail_slope < 0.0 && q.back() < qmax;
    return r;
}

BomanValidation validate_boman_input(const BomanInput& in, int k_lo, int k_hi,
                                     const std::vector<double>& gammas, int max_order) {
    BomanValidation v;
    v.k_lo = k_lo;
    v.k_hi = k_hi;
    double prev = std::ldexp(in.b(k_lo - 1), k_lo - 1);
    for (int k = k_lo; k <= k_hi; ++k) {
        const double cur = std::ldexp(in.b(k), k);
        if (!(cur < prev) && v.monotone_2k_b) {
            v.monotone_2k_b = false;
            v.first_monotone_violation = k;
        }
        prev = cur;
    }
    std::vector<int> ks;
    std::vector<double> bs;
    for (int k = k_lo; k <= k_hi; ++k) {
        ks.push_back(k);
        bs.push_back(in.b(k));
    }
    for (double g : gammas) {
        v.superexp.push_back(superexp_check(ks, bs, g));
        v.superexp_pass = v.superexp_pass && v.superexp.back().pass;
    }
    const int nr = std::max(max_order - 2, 0);
    v.M.assign(static_cast<std::size_t>(nr) + 1, 0.0);
    v.min_second = INFINITY;
    for (int k = k_lo; k <= k_hi; ++k) {
        for (double s : linspace(-t_k(k), t_k(k), 257)) {
            const Jet j = in.family.second(k, s, nr);
            for (int r = 0; r <= nr; ++r)
                v.M[static_cast<std::size_t>(r)] =
                    std::max(v.M[static_cast<std::size_t>(r)], std::abs(j.derivative(r)));
            v.min_second = std::min(v.min_second, j.value());
        }
    }
    v.strictly_convex = v.min_second > 0.0;
    return v;
}

namespace {

struct Coefs {
    int K, k_min, k_max;
    std::vector<double> b, alpha;
    double alpha_tail;
};

// Jet of f'' at x: at most two summands are nonzero, so only indices near
// log4(1/x) are visited.
Jet second_jet(const Coefs& c, const ProfileFamily& fam, double x, int n) {
    Jet s(n, 0.0);
    if (!(x > 0.0)) return s;
    const int kc = static_cast<int>(std::floor(-std::log2(x) / 2.0));
    for (int k = std::max(c.K, kc - 2); k <= std::min(c.k_max, kc + 2); ++k) {
        const double t = t_k(k);
        const Jet p2 = psi_jet(x / t, n);
        if (p2.value() != 0.0)
            s += fam.second(k, x - t, n) * p2.scaled(1.0 / t) * c.b[static_cast<std::size_t>(k - c.k_min)];
        const Jet p1 = psi_jet(x / (2.0 * t), n);
        if (p1.value() != 0.0) s += p1.scaled(0.5 / t) * c.alpha[static_cast<std::size_t>(k - c.k_min)];
    }
    const double tt = t_k(c.k_max + 1);
    const Jet pt = psi_jet(x / (2.0 * tt), n);
    if (pt.value() != 0.0) s += pt.scaled(0.5 / tt) * c.alpha_tail;
    return s;
}

BomanOutput build_impl(const BomanInput& in, int K_fixed, int k_max, const BomanOptions& opt) {
    if (opt.k_min < 1) throw ArgumentError("k_min must be at least 1");
    if (k_max < opt.k_min + 3) throw ArgumentError("k_max must be at least k_min + 3");
    BomanOutput out;
    out.k_min = opt.k_min;
    out.k_max = k_max;
    const std::size_t nq = opt.quad_points;
    out.psi_integral = simpson([](double u) { return psi_jet(u, 0).value(); }, 2.0 / 3.0, 1.5, nq);
    const ProfileFamily& fam = in.family;
    auto f2 = [&](int k, double s) { return fam.second(k, s, 0).value(); };
    for (int k = opt.k_min; k <= k_max; ++k) {
        const double t = t_k(k), tp = t_k(k - 1);
        const double bk = in.b(k), bp = in.b(k - 1);
        const double A = simpson([&](double x) { return psi_jet(x / t, 0).value() * f2(k, x - t); },
                                 t, 1.5 * t, nq);
        const double B = simpson(
            [&](double x) { return psi_jet(x / tp, 0).value() * f2(k - 1, x - tp); },
            8.0 / 3.0 * t, 4.0 * t, nq);
        const double D = simpson([&](double x) { return psi_jet(x / (2.0 * t), 0).value(); },
                                 4.0 / 3.0 * t, 3.0 * t, nq);
        out.b.push_back(bk);
        out.A.push_back(A);
        out.B.push_back(B);
        out.D.push_back(D);
        out.alpha.push_back((bp * (1.0 - B) - bk * (1.0 + A)) / D);
    }
    if (K_fixed > 0) {
        out.K = K_fixed;
        for (int k = K_fixed; k <= k_max; ++k)
            if (!(out.at(out.alpha, k) > 0.0))
                throw ConstructionError("alpha_" + std::to_string(k) + " <= 0 for fixed K=" +
                                        std::to_string(K_fixed));
    } else {
        out.K = -1;
        for (int K = k_max; K >= opt.k_min; --K) {
            if (!(out.at(out.alpha, K) > 0.0)) break;
            out.K = K;
        }
        if (out.K < 0 || out.K > k_max - 3)
            throw ConstructionError("no K with alpha_k > 0 for all k in [K, " + std::to_string(k_max) +
                                    "] and K <= k_max - 3");
    }
    const double t = t_k(k_max);
    out.B_tail = simpson([&](double x) { return psi_jet(x / t, 0).value() * f2(k_max, x - t); },
                         2.0 / 3.0 * t, t, nq);
    const double tt = t_k(k_max + 1);
    out.D_tail = simpson([&](double x) { return psi_jet(x / (2.0 * tt), 0).value(); },
                         4.0 / 3.0 * tt, 3.0 * tt, nq);
    out.alpha_tail = in.b(k_max) * (1.0 - out.B_tail) / out.D_tail;
    if (!(out.alpha_tail > 0.0)) throw ConstructionError("truncation tail coefficient is not positive");

    auto coefs = std::make_shared<Coefs>();
    coefs->K = out.K;
    coefs->k_min = out.k_min;
    coefs->k_max = k_max;
    coefs->b = out.b;
    coefs->alpha = out.alpha;
    coefs->alpha_tail = out.alpha_tail;
    out.flat_below = 4.0 / 3.0 * tt;
    const double hi = 3.0 * t_k(out.K);
    JetFn second = [coefs, fam](double x, int n) { return second_jet(*coefs, fam, x, n); };
    out.f = integrate_twice({0.0, hi}, second, dyadic_nodes(out.flat_below, hi, opt.cells_per_shell),
                            0.0, 0.0, opt.max_order);
    for (int k = out.K; k <= k_max; ++k) out.fprime_residual.push_back(out.f.eval(t_k(k), 1) - in.b(k));
    return out;
}

} // namespace

BomanOutput build_boman(const BomanInput& in, int k_max, const BomanOptions& opt) {
    return build_impl(in, 0, k_max, opt);
}

BomanOutput build_boman_fixed_K(const BomanInput& in, int K, int k_max, const BomanOptions& opt) {
    if (K < opt.k_min || K > k_max - 3) throw ArgumentError("fixed K outside [k_min, k_max - 3]");
    return build_impl(in, K, k_max, opt);
}

PliableSeries boman_series(const BomanOutput& out, const BomanInput& in) {
    PliableSeries ps;
    ps.base_point = 0.0;
    ps.J = out.f.domain();
    const ProfileFamily fam = in.family;
    auto psi_term = [&](int index, double c, double scale) {
        PliableTerm term;
        term.index = index;
        term.c = c;
        term.support = {2.0 / 3.0 * scale, 1.5 * scale};
        term.g = from_jet(ps.J, [scale](double x, int n) { return psi_jet(x / scale, n).scaled(1.0 / scale); });
        return term;
    };
    for (int k = out.K; k <= out.k_max; ++k) {
        const double t = t_k(k);
        ps.terms.push_back(psi_term(2 * k - 1, out.at(out.alpha, k), 2.0 * t));
        PliableTerm term;
        term.index = 2 * k;
        term.c = out.at(out.b, k);
        term.support = {2.0 / 3.0 * t, 1.5 * t};
        term.g = from_jet(ps.J, [fam, k, t](double x, int n) {
            return fam.second(k, x - t, n) * psi_jet(x / t, n).scaled(1.0 / t);
        });
        ps.terms.push_back(term);
    }
    ps.terms.push_back(psi_term(2 * out.k_max + 1, out.alpha_tail, 2.0 * t_k(out.k_max + 1)));
    std::sort(ps.terms.begin(), ps.terms.end(),
              [](const PliableTerm& a, const PliableTerm& b) { return a.index < b.index; });
    return ps;
}

PliableReport check_pliable(const PliableSeries& ps, int r_max, const std::vector<double>& eps_grid,
                            const std::vector<double>& gammas, double L_limit) {
    PliableReport rep;
    std::vector<int> idx;
    std::vector<double> cs;
    for (const auto& t : ps.terms) {
        idx.push_back(t.index);
        cs.push_back(t.c);
        if (!(t.c > 0.0)) {
            rep.i_pass = false;
            rep.violations.push_back("(i) nonpositive coefficient at index " + std::to_string(t.index));
        }
        if (t.support.contains(ps.base_point) || t.support.lo == ps.base_point ||
            t.support.hi == ps.base_point) {
            rep.supports_avoid_base = false;
            rep.violations.push_back("(ii) support of index " + std::to_string(t.index) +
                                     " touches the base point");
        }
    }
    for (double g : gammas) {
        rep.cond_i.push_back(superexp_check(idx, cs, g));
        if (!rep.cond_i.back().pass) {
            rep.i_pass = false;
            rep.violations.push_back("(i) 2^{k gamma} c_k not decaying for gamma=" + std::to_string(g));
        }
    }
    // (ii): successive growth of ||g_k||_r stays within an exponential envelope.
    for (int r = 0; r <= r_max; ++r) {
        std::vector<double> logs;
        for (const auto& t : ps.terms) {
            const Interval s = t.support;
            const double v = cr_norm(t.g, r, {std::max(s.lo, ps.J.lo), std::min(s.hi, ps.J.hi)}, 257).value;
            logs.push_back(std::log2(std::max(v, 1e-300)));
        }
        double head = -INFINITY, tail = -INFINITY, rate = -INFINITY;
        for (std::size_t i = 1; i < logs.size(); ++i) {
            const double d = (logs[i] - logs[i - 1]) / std::max(1, idx[i] - idx[i - 1]);
            rate = std::max(rate, d);
            (i <= logs.size() / 2 ? head : tail) = std::max(i <= logs.size() / 2 ? head : tail, d);
        }
        rep.growth_rate.push_back(logs.size() > 1 ? rate : 0.0);
        if (logs.size() > 3 && tail > std::max(head, 0.0) + 0.5 * (r + 1)) {
            rep.ii_pass = false;
            rep.violations.push_back("(ii) C^" + std::to_string(r) + " norms outgrow an exponential envelope");
        }
    }
    for (double eps : eps_grid) {
        if (!(eps > 0.0 && 2.0 * eps < ps.J.length())) continue;
        std::size_t count = 0;
        for (const auto& t : ps.terms) {
            const double dlo = std::abs(t.support.lo - ps.base_point);
            const double dhi = std::abs(t.support.hi - ps.base_point);
            const double near = std::min(dlo, dhi), far = std::max(dlo, dhi);
            if (far < eps || near > 2.0 * eps) continue;
            ++count;
            if (t.index <= 0) {
                rep.iii_pass = false;
                rep.violations.push_back("(iii) nonpositive index in J_eps");
                continue;
            }
            rep.L = std::max(rep.L, std::log2(1.0 / eps) / t.index);
        }
        rep.max_J_eps = std::max(rep.max_J_eps, count);
        rep.L = std::max(rep.L, static_cast<double>(count));
    }
    if (L_limit > 0.0 && rep.L > L_limit) {
        rep.iii_pass = false;
        rep.violations.push_back("(iii) needs L=" + std::to_string(rep.L) + " above the limit");
    }
    if (!std::isfinite(rep.L)) rep.iii_pass = false;
    return rep;
}

PartialSumReport partial_sum_convergence(const PliableSeries& ps, int r, int l, int l2,
                                         std::size_t per_term) {
    PartialSumReport rep;
    rep.l = l;
    rep.l2 = l2;
    rep.r = r;
    std::vector<const PliableTerm*> active;
    std::vector<double> xs;
    for (const auto& t : ps.terms) {
        if (t.index <= l || t.index > l2) continue;
        active.push_back(&t);
        const auto g = linspace(std::max(t.support.lo, ps.J.lo), std::min(t.support.hi, ps.J.hi), per_term);
        xs.insert(xs.end(), g.begin(), g.end());
    }
    if (active.empty()) return rep;
    std::sort(xs.begin(), xs.end());
    std::vector<double> mx(static_cast<std::size_t>(r) + 1, 0.0);
    for (double x : xs) {
        Jet s(r, 0.0);
        for (const auto* t : active)
            if (t->support.contains(x)) s += t->g.jet(x, r) * t->c;
        for (int i = 0; i <= r; ++i)
            mx[static_cast<std::size_t>(i)] = std::max(mx[static_cast<std::size_t>(i)], std::abs(s.derivative(i)));
    }
    rep.value = std::accumulate(mx.begin(), mx.end(), 0.0);
    return rep;
}

} // namespace minklab
