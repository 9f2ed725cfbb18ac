// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.  Tolerances are pinned below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "minklab/blowup.hpp"
#include "minklab/cantor.hpp"
#include "minklab/curve.hpp"
#include "minklab/error.hpp"
#include "minklab/hinge.hpp"
#include "minklab/infconv.hpp"

using namespace minklab;

namespace {

constexpr double kPi = std::numbers::pi;

// pinned tolerances
constexpr double kClosedFormTol = 1e-6;
constexpr double kRouteTol = 1e-6;
constexpr double kIdentityTol = 1e-6;
constexpr double kInterpTol = 1e-8;
constexpr double kPartitionTol = 1e-12;
constexpr int kMinIncreasingRun = 4;
constexpr double kTurningTol = 1e-6;
constexpr double kCrossTol = 1e-9;
constexpr std::size_t kSupportGrid = std::size_t{1} << 16;
constexpr double kAdditivityTol = 1e-8;
constexpr double kKappaMin = 1e-6;
constexpr double kSweepMatchTol = 0.01;
constexpr double kSweepVariationTol = 0.10;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.3g", v);
    return b;
}

std::vector<double> random_convex_poly(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double c2 = 0.5 + 2.5 * u(rng);
    return {2 * u(rng) - 1, 2 * u(rng) - 1, c2, (0.6 * u(rng) - 0.3) * c2, u(rng)};
}

double sup_route_diff(const SmoothFn& f, const SmoothFn& g, Interval out) {
    const InfConvResult d = infconv_direct(f, g, out);
    const InfConvResult c = infconv_conjugate(f, g, out);
    double w = 0.0;
    for (std::size_t i = 0; i < d.x.size(); ++i) w = std::max(w, std::abs(d.h_values[i] - c.h_values[i]));
    return w;
}

// Shared heavy objects, built once.
struct Shared {
    BomanInput f_in, g_in;
    Sequence a;
    BomanPair pair;
    BlowupTable blowup;
    ScheduleResult sched;
    std::vector<CurveAssembly> curves;
    std::vector<SupportFn> supports;
    int m_max = 6;
};

Shared& shared() {
    static Shared s = [] {
        Shared s;
        s.a = [](int k) { return 0.0625 * std::pow(0.25, k); };
        const GaussExp b{1, 1, 0.03};
        s.f_in = {b, quadratic_family(s.a)};
        s.g_in = {b, quartic_family()};
        return s;
    }();
    return s;
}

void ensure_pair() {
    Shared& s = shared();
    if (s.pair.F.f.valid()) return;
    s.pair = build_boman_pair(s.f_in, s.g_in, 7);
    s.blowup = boman_blowup(s.pair, s.pair.F.K, 5, 0.75, 0.125, 512, s.a);
}

void ensure_curves() {
    Shared& s = shared();
    if (!s.curves.empty()) return;
    const std::vector<SmoothFn> profiles{exp_flat_profile(20.0, 1e-6, 1.0), exp_flat_profile(10.0, 2e-6, 1.0)};
    s.sched = schedule_smoothings(profiles, s.m_max);
    AssemblyOptions ao;
    ao.m_max = s.m_max;
    for (std::size_t p = 0; p < profiles.size(); ++p) s.curves.push_back(assemble_curve(s.sched.results[p], s.sched.n, ao));
}

void ensure_supports() {
    ensure_curves();
    Shared& s = shared();
    if (!s.supports.empty()) return;
    for (const CurveAssembly& c : s.curves) s.supports.push_back(support_of_curve(c.curve, kSupportGrid));
}

} // namespace

namespace {

Outcome closed_form() {
    const SmoothFn q = polynomial({0, 0, 1}, {-1, 1});
    const SmoothFn r = polynomial({0, 0, 2}, {-1, 1});
    double worst = 0.0;
    for (const InfConvResult& res : {infconv_direct(q, r, {-1, 1}), infconv_conjugate(q, r, {-1, 1})})
        for (std::size_t i = 0; i < res.x.size(); ++i)
            worst = std::max(worst, std::abs(res.h_values[i] - 2.0 / 3.0 * res.x[i] * res.x[i]));
    return {worst <= kClosedFormTol, "max deviation " + num(worst)};
}

Outcome route_equivalence() {
    std::mt19937_64 rng(20240601);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const SmoothFn f = polynomial(random_convex_poly(rng), {-1, 1});
        const SmoothFn g = polynomial(random_convex_poly(rng), {-1, 1});
        worst = std::max(worst, sup_route_diff(f, g, {-2, 2}));
    }
    ensure_pair();
    const Shared& s = shared();
    const Interval fd = s.pair.F.f.domain(), gd = s.pair.G.f.domain();
    const double boman = sup_route_diff(s.pair.F.f, s.pair.G.f, {fd.lo + gd.lo, fd.hi + gd.hi});
    return {worst <= kRouteTol && boman <= kRouteTol,
            "random pairs " + num(worst) + ", Boman pair " + num(boman)};
}

Outcome identities() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    std::vector<std::pair<SmoothFn, SmoothFn>> pairs{{polynomial({0, 0, 1}, {-1, 1}), polynomial({0, 0, 2}, {-1, 1})}};
    while (pairs.size() < 5)
        pairs.emplace_back(polynomial(random_convex_poly(rng), {-1, 1}), polynomial(random_convex_poly(rng), {-1, 1}));
    double worst = 0.0;
    std::size_t points = 0, attempts = 0;
    for (const auto& [f, g] : pairs) {
        std::size_t here = 0;
        while (here < 200 && attempts < 100000) {
            ++attempts;
            const double x = u(rng);
            if (minimize_at(f, g, x).boundary) continue;
            const SmoothnessDiag d = smoothness_diag(f, g, x);
            worst = std::max({worst, d.res_grad, d.res_hess});
            ++here;
        }
        points += here;
    }
    return {points == 1000 && worst <= kIdentityTol, num(double(points)) + " points, max relative residual " + num(worst)};
}

Outcome boman_construction() {
    ensure_pair();
    const Shared& s = shared();
    double worst = 0.0;
    bool alpha_pos = true;
    for (const BomanOutput* o : {&s.pair.F, &s.pair.G}) {
        for (int k = o->K; k <= o->k_max; ++k) {
            worst = std::max(worst, std::abs(o->f.eval(t_k(k), 1) - o->at(o->b, k)));
            alpha_pos = alpha_pos && o->at(o->alpha, k) > 0.0;
        }
    }
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> lx(std::log(1e-6), std::log(1e6));
    double part = 0.0;
    for (int i = 0; i < 1000; ++i) part = std::max(part, std::abs(dyadic_sum(std::exp(lx(rng))) - 1.0));
    return {worst <= kInterpTol && alpha_pos && part < kPartitionTol,
            "K=" + std::to_string(s.pair.F.K) + ", |f'(t_k)-b_k| " + num(worst) + ", alpha_k>0 " +
                (alpha_pos ? "yes" : "no") + ", partition residual " + num(part)};
}

Outcome blowup() {
    ensure_pair();
    const Shared& s = shared();
    const BomanValidation v = validate_boman_input(s.f_in, 1, 7, {1});
    const BlowupTable& T = s.blowup;
    bool control_finite = true;
    std::string cols;
    for (const BlowupRow& r : T.rows) {
        control_finite = control_finite && std::isfinite(r.c4);
        cols += " " + num(r.seminorm);
    }
    const bool pass = v.pass() && T.hypothesis_decreasing && T.longest_increasing_run >= kMinIncreasingRun && control_finite;
    return {pass, "seminorms" + cols + "; run " + std::to_string(T.longest_increasing_run) + "; C4 control finite " +
                      (control_finite ? "yes" : "no")};
}

} // namespace

namespace {

Outcome hinge_grid() {
    const SmoothFn f = exp_flat_profile();
    std::size_t certs = 0, failed = 0;
    std::string first_fail;
    for (double d : {0.005, 0.01, 0.02})
        for (double gamma : {0.01, 0.03, 0.06}) {
            const SmoothingResult r = build_smoothing(f, d, gamma);
            for (const Certificate& c : r.certificates) {
                ++certs;
                if (!c.pass) {
                    ++failed;
                    if (first_fail.empty()) first_fail = c.name + " at d=" + num(d) + " gamma=" + num(gamma);
                }
            }
        }
    return {failed == 0 && certs > 0,
            std::to_string(certs) + " certificates, " + std::to_string(failed) + " failed" +
                (first_fail.empty() ? "" : " (" + first_fail + ")")};
}

Outcome curve_assembly() {
    ensure_curves();
    const Shared& s = shared();
    const double cell = 2.0 * kPi / double(kSupportGrid);
    bool pass = s.sched.certificates_pass;
    double turn = 0.0, cross = 1.0, dist = 0.0, mono = -1.0;
    for (const CurveAssembly& c : s.curves) {
        const AssemblyReport& r = c.report;
        turn = std::max(turn, std::abs(c.curve.total_turning - 2.0 * kPi));
        cross = std::min(cross, r.min_cross_scaled);
        dist = std::max({dist, r.cantor_max_distance, r.cantor_uncovered});
        for (const MonotoneStep& m : r.monotone) mono = std::max(mono, m.max_violation);
        pass = pass && c.curve.symmetry_order == 2 * s.sched.n;
    }
    pass = pass && turn <= kTurningTol && cross >= -kCrossTol && dist <= cell && mono <= 0.0;
    return {pass, "n=" + std::to_string(s.sched.n) + ", turning error " + num(turn) + ", min cross " + num(cross) +
                      ", zero-set distance " + num(dist) + " (cell " + num(cell) + "), monotone violation " + num(mono)};
}

Outcome cantor_covering() {
    const ExactCantorSpec thirds{Rational(0), Rational(1), {Rational(1, 3)}, 12};
    const ExactIntervalSet C = build_cantor(thirds);
    const bool cc = covers(difference_set(C, C), {Rational(-1), Rational(1)}).covers;

    ensure_curves();
    const Shared& s = shared();
    const GaussZeroSet& Z = s.curves.front().zeros;
    const Rational period(2 * Z.n);
    const ExactIntervalSet OO = wrap_mod(sum_sets(Z.Z_units, Z.Z_units), period);
    const bool oo = covers(OO, {Rational(0), period}).covers;
    const std::vector<double> avoid = rotations_avoiding_zero_sets(Z, Z, 10000);
    return {cc && oo && avoid.empty(), std::string("C-C covers [-1,1]: ") + (cc ? "yes" : "no") +
                                           ", O+O covers the circle at depth " + std::to_string(Z.depth) + ": " +
                                           (oo ? "yes" : "no") + ", avoiding angles " + std::to_string(avoid.size())};
}

Outcome curvature_transfer() {
    ensure_supports();
    const Shared& s = shared();
    const TransferReport pair = curvature_transfer_sweep(s.supports[0], s.supports[1], kKappaMin);
    // A strictly curved summand against C_g exercises the flat direction of the equivalence.
    const SupportFn disk = support_of_circle(1.0, kSupportGrid);
    const TransferReport mixed = curvature_transfer_sweep(disk, s.supports[1], kKappaMin);
    std::size_t e_checked = 0, e_bad = 0;
    // E angles on the base copy [0, pi/n]; the other copies add k pi / n in
    // floating point, which lands beside the flat endpoint.
    const double base_hi = kPi / double(s.sched.n);
    for (double e : s.curves[1].zeros.E) {
        if (e > base_hi) continue;
        const TransferEntry t = curvature_transfer_at(disk, s.supports[1], e, kKappaMin);
        ++e_checked;
        if (!(t.flat_B && t.flat_sum && t.consistent)) ++e_bad;
    }
    const double resid = std::max(pair.max_additivity_residual, mixed.max_additivity_residual);
    const bool pass = pair.inconsistent == 0 && mixed.inconsistent == 0 && resid <= kAdditivityTol &&
                      mixed.flat_cases > 0 && e_bad == 0;
    return {pass, "C_f+C_g checked " + std::to_string(pair.checked) + ", disk+C_g flat cases " +
                      std::to_string(mixed.flat_cases) + ", inconsistent " +
                      std::to_string(pair.inconsistent + mixed.inconsistent) + ", rho residual " + num(resid) +
                      ", E angles " + std::to_string(e_checked - e_bad) + "/" + std::to_string(e_checked)};
}

Outcome rotation_sweep_check() {
    ensure_pair();
    const Shared& s = shared();
    const int k = s.pair.F.K + 1;
    const double thr = sweep_threshold(s.pair, k);
    const SweepResult R = rotation_sweep(s.pair, k, {0.0, -thr, -0.5 * thr, 0.5 * thr, thr, 100 * thr}, 0.75);
    double ref = 0.0;
    for (const BlowupRow& r : s.blowup.rows)
        if (r.k == k) ref = r.seminorm;
    const double match = ref > 0 ? std::abs(R.base - ref) / ref : INFINITY;
    return {match <= kSweepMatchTol && R.max_rel_change_below < kSweepVariationTol,
            "k=" + std::to_string(k) + ", delta=0 vs blow-up " + num(match) + ", variation below threshold " +
                num(R.max_rel_change_below) + " (threshold " + num(thr) + ")"};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"closed-form infimal convolution", closed_form},
        {"route equivalence", route_equivalence},
        {"gradient and Hessian identities", identities},
        {"Boman construction", boman_construction},
        {"blow-up reproduction", blowup},
        {"hinge certificates", hinge_grid},
        {"curve assembly", curve_assembly},
        {"Cantor covering", cantor_covering},
        {"curvature transfer", curvature_transfer},
        {"rotation sweep", rotation_sweep_check},
    };
    int failed = 0, index = 0;
    for (const auto& [name, fn] : criteria) {
        ++index;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", index, name.c_str(), o.detail.c_str(), sec);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
