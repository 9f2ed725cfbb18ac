#include <algorithm>
#include <cmath>
#include <sstream>

#include "minklab/blowup.hpp"
#include "minklab/curve.hpp"
#include "minklab/error.hpp"
#include "minklab/infconv.hpp"
#include "minklab_cli/cli.hpp"
#include "minklab_cli/specs.hpp"

namespace minklab::cli {

namespace {

struct PairSetup {
    BomanInput f_in, g_in;
    Sequence a;
    int k_max = 7;
};

PairSetup boman_setup(const Config& cfg, const Flags& flags) {
    PairSetup s;
    const Sequence b = make_sequence("boman.b", cfg.get_string("boman.b", "gauss_exp:c0=1,c1=1,c2=0.03"));
    s.a = make_sequence("boman.a", cfg.get_string("boman.a", "geometric:c=0.0625,r=0.25"));
    s.f_in = {b, make_family("boman.f_family", cfg.get_string("boman.f_family", "quadratic"), s.a)};
    s.g_in = {b, make_family("boman.g_family", cfg.get_string("boman.g_family", "quartic"), s.a)};
    s.k_max = static_cast<int>(flags.depth ? *flags.depth : cfg.get_int("boman.k_max", 7));
    if (s.k_max < 4 || s.k_max > 12) throw ConfigError("boman.k_max", "must lie in [4, 12]");
    return s;
}

/// The super-exponential proxy is checked for the configured gammas only
/// (default 1); the blow-up schedule cannot pass larger ones at k <= 12.
void validate_or_throw(const PairSetup& s, const Config& cfg) {
    std::vector<double> gammas{1.0};
    if (cfg.has("boman.superexp_gammas")) gammas = cfg.get_doubles("boman.superexp_gammas");
    const BomanValidation v = validate_boman_input(s.f_in, 1, s.k_max, gammas);
    if (!v.monotone_2k_b)
        throw HypothesisError(v.first_monotone_violation,
                              "2^k b_k is not strictly decreasing at k = " + std::to_string(v.first_monotone_violation));
    for (const SuperExpCheck& c : v.superexp)
        if (!c.pass)
            throw HypothesisError(s.k_max, "b_k fails the super-exponential decay proxy at gamma = " + fmt(c.gamma));
}

} // namespace

Json cmd_infconv(const Config& cfg, const Flags& flags, RunOutput& out) {
    const SmoothFn f = make_function("infconv.f", cfg.get_string("infconv.f"));
    const SmoothFn g = make_function("infconv.g", cfg.get_string("infconv.g"));
    const Interval fd = f.domain(), gd = g.domain();
    const double lo = cfg.get_double("infconv.lo", fd.lo + gd.lo);
    const double hi = cfg.get_double("infconv.hi", fd.hi + gd.hi);
    if (!(lo < hi)) throw ConfigError("infconv.lo", "output interval is empty");
    const std::string route = cfg.get_string("infconv.route", "direct");
    if (route != "direct" && route != "conjugate" && route != "both")
        throw ConfigError("infconv.route", "expected direct, conjugate or both");
    const double tol = flags.tol.value_or(1e-6);
    InfConvOptions opt;
    opt.grid_n = static_cast<std::size_t>(flags.grid.value_or(1025));
    std::optional<SmoothFn> expect;
    if (cfg.has("infconv.expect")) expect = make_function("infconv.expect", cfg.get_string("infconv.expect"));

    Json summary;
    summary["interval"] = {lo, hi};
    summary["grid"] = opt.grid_n;
    std::vector<InfConvResult> results;
    if (route != "conjugate") results.push_back(infconv_direct(f, g, {lo, hi}, opt));
    if (route != "direct") results.push_back(infconv_conjugate(f, g, {lo, hi}, opt));
    Json routes = Json::array();
    for (const InfConvResult& r : results) {
        std::ostringstream os;
        write_infconv_csv(os, r, f, g);
        out.write(std::string("infconv_") + (r.route == Route::direct_min ? "direct" : "conjugate") + ".csv", os.str());
        Json rj{{"route", to_string(r.route)},
                {"boundary_samples", std::count(r.boundary.begin(), r.boundary.end(), 1)}};
        if (expect) {
            double dev = 0.0;
            for (std::size_t i = 0; i < r.x.size(); ++i)
                dev = std::max(dev, std::abs(r.h_values[i] - (*expect)(r.x[i])));
            rj["max_dev_expected"] = dev;
            rj["matches_expected"] = dev <= tol;
        }
        routes.push_back(rj);
    }
    summary["routes"] = routes;
    if (results.size() == 2) {
        double dev = 0.0;
        for (std::size_t i = 0; i < results[0].x.size(); ++i)
            dev = std::max(dev, std::abs(results[0].h_values[i] - results[1].h_values[i]));
        const Json diff{{"max_deviation", dev}, {"tol", tol}, {"agree", dev <= tol}};
        out.write_json("route_diff.json", diff);
        summary["route_diff"] = diff;
    }

    if (route != "conjugate" && std::min(f.max_order(), g.max_order()) >= 3) {
        Csv csv({"x", "mu", "hess_f", "hess_g", "j_mu", "hess_h_fd", "res_grad", "res_hess", "res_jmu"});
        const InfConvResult& r = results.front();
        const std::size_t stride = std::max<std::size_t>(1, r.x.size() / 256);
        double worst = 0.0;
        for (std::size_t i = stride; i + stride < r.x.size(); i += stride) {
            if (r.boundary[i]) continue;
            try {
                const double step = 1e-3 * (hi - lo);
                if (r.x[i] - 2 * step < lo || r.x[i] + 2 * step > hi) continue;
                const SmoothnessDiag d = smoothness_diag(f, g, r.x[i], step);
                csv.row({d.x, d.mu, d.hess_f, d.hess_g, d.j_mu, d.hess_h, d.res_grad, d.res_hess, d.res_jmu});
                worst = std::max({worst, d.res_grad, d.res_hess});
            } catch (const Error&) {
                const double nan = std::nan("");
                csv.row({r.x[i], nan, nan, nan, nan, nan, nan, nan, nan});
            }
        }
        out.write("infconv_diagnostics.csv", csv.str());
        summary["max_identity_residual"] = worst;
    }
    return summary;
}

Json cmd_boman_blowup(const Config& cfg, const Flags& flags, RunOutput& out) {
    const PairSetup s = boman_setup(cfg, flags);
    const double alpha = cfg.get_double("boman.alpha", 0.75);
    const double frac = cfg.get_double("boman.window_frac", 0.125);
    const std::size_t points = static_cast<std::size_t>(flags.grid.value_or(cfg.get_int("boman.points", 512)));
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("boman.alpha", "must lie in (0, 1]");
    if (!(frac > 0.0 && frac <= 0.25)) throw ConfigError("boman.window_frac", "must lie in (0, 1/4]");
    validate_or_throw(s, cfg);
    const BomanPair P = build_boman_pair(s.f_in, s.g_in, s.k_max);
    const int k_lo = static_cast<int>(cfg.get_int("boman.k_lo", P.F.K));
    const int k_hi = static_cast<int>(cfg.get_int("boman.k_hi", s.k_max - 2));
    if (k_lo < P.F.K || k_hi > s.k_max || k_lo > k_hi) throw ConfigError("boman.k_lo", "range must lie in [K, k_max]");
    const BlowupTable T = boman_blowup(P, k_lo, k_hi, alpha, frac, points, s.a);
    if (!T.hypothesis_decreasing)
        throw HypothesisError(T.first_hypothesis_violation,
                              "a_k^alpha / b_k is not decreasing at k = " + std::to_string(T.first_hypothesis_violation));

    Csv csv({"k", "window_lo", "window_hi", "seminorm", "c4_control", "fprime_residual", "hypothesis_ratio"});
    Json rows = Json::array();
    double worst_res = 0.0;
    for (const BlowupRow& r : T.rows) {
        csv.row({double(r.k), r.window_lo, r.window_hi, r.seminorm, r.c4, r.fprime_residual, r.hypothesis_ratio});
        rows.push_back({{"k", r.k}, {"seminorm", r.seminorm}, {"c4", r.c4}});
    }
    for (double r : P.F.fprime_residual) worst_res = std::max(worst_res, std::abs(r));
    out.write("blowup.csv", csv.str());
    Json summary;
    summary["K"] = P.F.K;
    summary["k_max"] = s.k_max;
    summary["alpha"] = alpha;
    summary["rows"] = rows;
    summary["longest_increasing_run"] = T.longest_increasing_run;
    summary["max_fprime_residual"] = worst_res;
    return summary;
}

Json cmd_rotate_sweep(const Config& cfg, const Flags& flags, RunOutput& out) {
    const PairSetup s = boman_setup(cfg, flags);
    const double alpha = cfg.get_double("boman.alpha", 0.75);
    const double frac = cfg.get_double("boman.window_frac", 0.125);
    const std::size_t points = static_cast<std::size_t>(flags.grid.value_or(cfg.get_int("boman.points", 512)));
    const double factor = cfg.get_double("sweep.threshold_factor", 0.02);
    const double cont_tol = flags.tol.value_or(0.1);
    validate_or_throw(s, cfg);
    const BomanPair P = build_boman_pair(s.f_in, s.g_in, s.k_max);
    const int k = static_cast<int>(cfg.get_int("sweep.k", P.F.K + 1));
    if (k < P.F.K || k > s.k_max - 2) throw ConfigError("sweep.k", "must lie in [K, k_max - 2]");
    const double thr = sweep_threshold(P, k, frac, factor);
    std::vector<double> rel{0.0, 0.25, -0.25, 0.5, -0.5, 0.9, -0.9, 2.0, -2.0, 10.0, -10.0};
    if (cfg.has("sweep.deltas_rel")) rel = cfg.get_doubles("sweep.deltas_rel");
    std::vector<double> deltas;
    for (double r : rel) deltas.push_back(r * thr);
    const SweepResult S = rotation_sweep(P, k, deltas, alpha, frac, points, factor);

    const int n = static_cast<int>(cfg.get_int("sweep.n", 2));
    const int depth = static_cast<int>(cfg.get_int("sweep.cantor_depth", 6));
    if (n < 2 || depth < 0 || depth > 12) throw ConfigError("sweep.n", "need n >= 2 and cantor depth in [0, 12]");
    Rational ratio;
    try {
        ratio = parse_rational(cfg.get_string("sweep.ratio", "1/3"));
    } catch (const ArgumentError& e) {
        throw ConfigError("sweep.ratio", e.what());
    }
    const GaussZeroSet Z = cantor_zero_set(n, ratio, depth);

    Csv csv({"delta", "delta_over_threshold", "seminorm", "rel_change", "below_threshold", "zero_sets_intersect"});
    for (std::size_t i = 0; i < S.rows.size(); ++i) {
        const SweepRow& r = S.rows[i];
        const bool meets = rotations_avoiding(Z.Z, Z.Z, std::vector<double>{r.delta}, 2.0 * std::acos(-1.0)).empty();
        csv.row({r.delta, rel[i], r.seminorm, r.rel_change, r.below_threshold ? 1.0 : 0.0, meets ? 1.0 : 0.0});
    }
    out.write("sweep.csv", csv.str());
    Json summary;
    summary["k"] = k;
    summary["threshold"] = thr;
    summary["seminorm_at_zero"] = S.base;
    summary["max_rel_change_below_threshold"] = S.max_rel_change_below;
    summary["continuity_tol"] = cont_tol;
    summary["continuous"] = S.max_rel_change_below < cont_tol;
    return summary;
}

} // namespace minklab::cli
