#include <algorithm>
#include <cmath>
#include <functional>
#include <type_traits>
#include <numbers>
#include <sstream>

#include "minklab/cantor.hpp"
#include "minklab/curve.hpp"
#include "minklab/error.hpp"
#include "minklab/hinge.hpp"
#include "minklab/numeric.hpp"
#include "minklab_cli/cli.hpp"
#include "minklab_cli/specs.hpp"

namespace minklab::cli {

namespace {

Rational rational_key(const Config& cfg, const std::string& key, const std::string& fallback) {
    try {
        return parse_rational(cfg.get_string(key, fallback));
    } catch (const ArgumentError& e) {
        throw ConfigError(key, e.what());
    }
}

std::vector<Rational> rational_list(const Config& cfg, const std::string& key, const std::string& fallback) {
    std::string s = cfg.get_string(key, fallback);
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::vector<Rational> out;
    std::string tok;
    while (in >> tok) {
        try {
            out.push_back(parse_rational(tok));
        } catch (const ArgumentError& e) {
            throw ConfigError(key, e.what());
        }
    }
    if (out.empty()) throw ConfigError(key, "expected at least one ratio");
    return out;
}

Json cert(const std::string& name, double measured, double bound, bool pass) {
    return {{"name", name}, {"measured", measured}, {"bound", bound}, {"pass", pass}};
}

} // namespace

Json cmd_curve(const Config& cfg, const Flags& flags, RunOutput& out) {
    std::vector<SmoothFn> profiles{make_function("curve.f", cfg.get_string("curve.f", "exp_flat:A=20,s=1e-6,tau=1"))};
    const bool pair = cfg.has("curve.g");
    if (pair) profiles.push_back(make_function("curve.g", cfg.get_string("curve.g")));
    const int m_max = static_cast<int>(flags.depth ? *flags.depth : cfg.get_int("curve.m_max", 6));
    if (m_max < 1 || m_max > 10) throw ConfigError("curve.m_max", "must lie in [1, 10]");
    const Rational ratio = rational_key(cfg, "curve.ratio", "1/3");
    if (!(ratio > Rational(0) && ratio < Rational(1))) throw ConfigError("curve.ratio", "must lie in (0, 1)");
    ScheduleOptions so;
    so.d1 = cfg.get_double("curve.d1", so.d1);
    so.q = cfg.get_double("curve.q", so.q);
    so.ratio = to_double(ratio);
    so.cap_factor = cfg.get_double("curve.cap_factor", so.cap_factor);
    const std::size_t N = static_cast<std::size_t>(flags.grid.value_or(cfg.get_int("curve.support_grid", 1 << 16)));
    if (N < 64) throw ConfigError("--grid", "support grid needs at least 64 angles");
    AssemblyOptions ao;
    ao.m_max = m_max;
    ao.ratio = ratio;
    ao.samples_per_piece = static_cast<std::size_t>(cfg.get_int("curve.samples_per_piece", 65));
    const bool write_support = cfg.get_bool("curve.write_support", true);

    const ScheduleResult sched = schedule_smoothings(profiles, m_max, so);
    const double cell = 2.0 * std::numbers::pi / static_cast<double>(N);
    Json summary;
    summary["n"] = sched.n;
    summary["m_max"] = m_max;
    summary["schedule"] = {{"gamma", sched.gamma}, {"d", sched.d}, {"caps_hold", sched.caps_hold},
                           {"certificates_pass", sched.certificates_pass}};
    std::vector<SupportFn> supports;
    bool all = sched.caps_hold && sched.certificates_pass;
    for (std::size_t p = 0; p < profiles.size(); ++p) {
        const CurveAssembly A = assemble_curve(sched.results[p], sched.n, ao);
        const AssemblyReport& r = A.report;
        const std::string tag = p == 0 ? "" : "_g";
        out.write_json("curve" + tag + ".json", curve_json(A));
        double mono = -1e300;
        for (const MonotoneStep& m : r.monotone) mono = std::max(mono, m.max_violation);
        Json certs = Json::array();
        certs.push_back(cert("total_turning", std::abs(A.curve.total_turning - 2.0 * std::numbers::pi) + r.turning_error, 1e-6,
                             r.turning_error <= 1e-6));
        certs.push_back(cert("convexity_cross", r.min_cross_scaled, -1e-9, r.min_cross_scaled >= -1e-9));
        certs.push_back(cert("symmetry_order", A.curve.symmetry_order, 2.0 * sched.n, A.curve.symmetry_order == 2 * sched.n));
        certs.push_back(cert("flat_marks_in_cantor", r.cantor_max_distance, cell, r.cantor_max_distance <= cell));
        certs.push_back(cert("cantor_intervals_flat", r.cantor_uncovered, cell, r.cantor_uncovered <= cell));
        certs.push_back(cert("monotone_limit", mono, 0.0, mono <= 0.0));
        certs.push_back(cert("E_in_Z", r.E_in_Z, 1, r.E_in_Z));
        certs.push_back(cert("E_dense_in_Z", r.E_dense, 1, r.E_dense));
        certs.push_back(cert("Z_reflection_symmetric", r.Z_reflection_symmetric, 1, r.Z_reflection_symmetric));
        certs.push_back(cert("Z_rotation_symmetric", r.Z_rotation_symmetric, 1, r.Z_rotation_symmetric));
        certs.push_back(cert("smoothing_curvature_positive", r.smoothing_interior_positive, 1, r.smoothing_interior_positive));
        for (const Json& c : certs) all = all && c["pass"].get<bool>();
        out.write_json("certificates" + tag + ".json", certs);
        summary["curve" + tag] = {{"vertices", A.curve.vertices.size()}, {"flat_marks", A.curve.flat_marks.size()},
                                  {"symmetry_order", A.curve.symmetry_order}};
        if (write_support || pair) {
            supports.push_back(support_of_curve(A.curve, N));
            if (write_support) out.write("support" + tag + ".csv", support_csv(supports.back()));
        }
    }
    if (pair) {
        const TransferReport t = curvature_transfer_sweep(supports[0], supports[1]);
        const Json tj{{"checked", t.checked}, {"skipped", t.skipped}, {"flat_cases", t.flat_cases},
                      {"inconsistent", t.inconsistent}, {"max_additivity_residual", t.max_additivity_residual},
                      {"pass", t.pass()}};
        out.write_json("transfer.json", tj);
        summary["transfer"] = tj;
        all = all && t.pass();
    }
    summary["all_pass"] = all;
    return summary;
}

Json cmd_hinge(const Config& cfg, const Flags& flags, RunOutput& out) {
    const SmoothFn f = make_function("hinge.f", cfg.get_string("hinge.f", "exp_flat:A=20,s=1e-6,tau=1"));
    const double d = cfg.get_double("hinge.d", 0.01);
    const double gamma = cfg.get_double("hinge.gamma", 0.05);
    if (!(d > 0.0)) throw ConfigError("hinge.d", "must be positive");
    if (!(gamma > 0.0 && gamma < std::numbers::pi / 3)) throw ConfigError("hinge.gamma", "must lie in (0, pi/3)");
    HingeOptions ho;
    ho.per_shell = static_cast<std::size_t>(cfg.get_int("hinge.per_shell", 256));
    const SmoothingResult r = build_smoothing(f, d, gamma, ho);
    const std::size_t n = static_cast<std::size_t>(flags.grid.value_or(1025));
    std::ostringstream os;
    write_csv(os, r.F, linspace(-d, d, n), 2);
    out.write("hinge.csv", os.str());
    Json certs = Json::array();
    for (const Certificate& c : r.certificates) certs.push_back(cert(c.name, c.measured, c.bound, c.pass));
    out.write_json("certificates.json", certs);
    for (const Certificate& c : r.certificates)
        if (!c.pass) throw ConstructionError("hinge certificate " + c.name + " failed");
    const Hinge& H = r.hinge_out;
    return {{"d", d},
            {"gamma", gamma},
            {"epsilon", r.epsilon},
            {"b_eps", r.b_eps},
            {"hinge", {{"l", H.l}, {"r", H.r}, {"alpha", H.alpha}}},
            {"certificates", r.certificates.size()},
            {"all_pass", r.all_pass}};
}

namespace {

template <class T>
Json cantor_report(const BasicIntervalSet<T>& S, const Config& cfg, const std::function<T(const std::string&)>& num) {
    Json j;
    j["size"] = S.size();
    j["total_length"] = to_double(S.total_length());
    if (S.size() <= (std::size_t{1} << 16)) j["intervals"] = to_json(S);
    if (cfg.has("cantor.target_lo") || cfg.has("cantor.target_hi")) {
        const T lo = num("cantor.target_lo"), hi = num("cantor.target_hi");
        if (!(lo <= hi)) throw ConfigError("cantor.target_lo", "target interval is empty");
        const CoverReport<T> c = covers(S, {lo, hi});
        j["target"] = {to_double(lo), to_double(hi)};
        j["covers"] = c.covers;
        j["gap_count"] = c.gaps.size();
        Json gaps = Json::array();
        for (std::size_t i = 0; i < c.gaps.size() && i < 100; ++i)
            gaps.push_back({to_double(c.gaps[i].lo), to_double(c.gaps[i].hi)});
        j["gaps"] = gaps;
    }
    return j;
}

} // namespace

Json cmd_cantor(const Config& cfg, const Flags& flags, RunOutput& out) {
    const int depth = static_cast<int>(flags.depth ? *flags.depth : cfg.get_int("cantor.depth", 6));
    const std::string op = cfg.get_string("cantor.op", "build");
    if (op != "build" && op != "sum" && op != "difference") throw ConfigError("cantor.op", "expected build, sum or difference");
    const bool exact = cfg.get_bool("cantor.exact", true);
    ExactCantorSpec spec;
    spec.ratios = rational_list(cfg, "cantor.ratios", "1/3");
    spec.base_lo = rational_key(cfg, "cantor.base_lo", "0");
    spec.base_hi = rational_key(cfg, "cantor.base_hi", "1");
    spec.depth = depth;
    if (depth > kMaxCantorDepth) throw ResourceError("cantor depth " + std::to_string(depth) + " exceeds 24");
    const bool wrap = cfg.has("cantor.period");
    const Rational period = wrap ? rational_key(cfg, "cantor.period", "1") : Rational(1);

    Json j;
    j["spec"] = to_json(spec);
    j["op"] = op;
    j["exact"] = exact;
    auto apply = [&](auto S) {
        using T = std::decay_t<decltype(S.intervals().front().lo)>;
        if (op == "sum") S = sum_sets(S, S);
        if (op == "difference") S = difference_set(S, S);
        if (wrap) {
            if constexpr (std::is_same_v<T, double>) S = wrap_mod(S, to_double(period));
            else S = wrap_mod(S, period);
        }
        std::function<T(const std::string&)> num = [&](const std::string& key) -> T {
            if constexpr (std::is_same_v<T, double>) return cfg.get_double(key);
            else return rational_key(cfg, key, "0");
        };
        return cantor_report(S, cfg, num);
    };
    if (exact) {
        j["result"] = apply(build_cantor(spec));
    } else {
        CantorSpec ds;
        for (const Rational& r : spec.ratios) ds.ratios.push_back(to_double(r));
        ds.base_lo = to_double(spec.base_lo);
        ds.base_hi = to_double(spec.base_hi);
        ds.depth = depth;
        j["result"] = apply(build_cantor(ds));
    }
    out.write_json("cantor.json", j);
    Json summary = j;
    summary["result"].erase("intervals");
    return summary;
}

} // namespace minklab::cli
