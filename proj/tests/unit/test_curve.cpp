#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

#include "minklab/curve.hpp"
#include "minklab/error.hpp"
#include "minklab/hinge.hpp"

using namespace minklab;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs_diff(const std::vector<double>& a, const std::function<double(std::size_t)>& ref) {
    double w = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, std::abs(a[i] - ref(i)));
    return w;
}

} // namespace

TEST_CASE("disk plus disk is a disk of summed radius") {
    const SupportFn s = minkowski_sum(support_of_circle(1.0, 1024), support_of_circle(2.0, 1024));
    CHECK(max_abs_diff(s.h, [](std::size_t) { return 3.0; }) < 1e-14);
    for (std::size_t i = 0; i < s.size(); i += 97) {
        CHECK(s.rho[i] == doctest::Approx(3.0));
        CHECK(s.curvature(s.theta[i]) == doctest::Approx(1.0 / 3.0));
    }
}

TEST_CASE("translation adds a linear term to the support function") {
    const SupportFn s = support_of_circle(1.0, 512, {1.0, 2.0});
    CHECK(max_abs_diff(s.h, [&](std::size_t i) { return 1.0 + std::cos(s.theta[i]) + 2.0 * std::sin(s.theta[i]); }) < 1e-14);
    const auto pts = boundary_points(s);
    for (std::size_t i = 0; i < pts.size(); i += 31)
        CHECK(std::hypot(pts[i].x - 1.0, pts[i].y - 2.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("support of a square") {
    const std::vector<Vec2> sq{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
    const SupportFn s = support_of_polygon(sq, 4096);
    CHECK(max_abs_diff(s.h, [&](std::size_t i) { return std::abs(std::cos(s.theta[i])) + std::abs(std::sin(s.theta[i])); }) < 1e-14);
}

TEST_CASE("ellipse sum: support route matches the polygon hull") {
    const std::size_t N = 4096;
    const SupportFn s = minkowski_sum(support_of_ellipse(2.0, 1.0, N), support_of_ellipse(0.5, 1.5, N, {0.3, 0.0}));
    const auto hull = polygon_minkowski_sum(ellipse_polygon(2.0, 1.0, N), ellipse_polygon(0.5, 1.5, N, {0.3, 0.0}));
    CHECK(hausdorff(boundary_points(s), hull) < 1e-5);
    // rho additivity against the sampled h + h''
    for (std::size_t i = 0; i < N; i += 211) CHECK(s.rho_fd(i) == doctest::Approx(s.rho[i]).epsilon(1e-5));
}

TEST_CASE("convex hull contains every input point (property)") {
    oracle::Gen g(17);
    for (int t = 0; t < 20; ++t) {
        std::vector<Vec2> pts;
        for (int i = 0; i < 60; ++i) pts.push_back({g.uniform(-1, 1), g.uniform(-1, 1)});
        const auto h = convex_hull(pts);
        REQUIRE(h.size() >= 3);
        for (const Vec2& p : pts)
            for (std::size_t i = 0; i < h.size(); ++i) {
                const Vec2 a = h[i], b = h[(i + 1) % h.size()];
                CHECK(cross(b - a, p - a) >= -1e-12);
            }
    }
}

TEST_CASE("transfer check precondition and capability") {
    const SupportFn flat = support_of_circle(1e7, 256);
    const SupportFn round = support_of_circle(1.0, 256);
    CHECK_THROWS_AS(curvature_transfer_check(flat, round, 3), PreconditionError);
    const SupportFn poly = support_of_polygon(ellipse_polygon(1, 1, 64), 256);
    CHECK_THROWS_AS(curvature_transfer_at(poly, round, 0.3), CapabilityError);
    const TransferEntry e = curvature_transfer_check(round, support_of_circle(2.0, 256), 5);
    CHECK(e.kappa_sum == doctest::Approx(1.0 / 3.0));
    CHECK(e.consistent);
}

TEST_CASE("finite zero sets can be rotated apart") {
    const GaussZeroSet a = point_zero_set({0.1, 2.0});
    const GaussZeroSet b = point_zero_set({0.1, 4.0});
    const auto av = rotations_avoiding_zero_sets(a, b, 1000);
    CHECK(av.size() > 990);
    CHECK(av.front() != 0.0);
}

TEST_CASE("Cantor zero sets on the same n cannot be rotated apart") {
    const GaussZeroSet z = cantor_zero_set(2, Rational(1, 3), 6);
    // 2n copies of 64 intervals; neighbouring copies share an endpoint
    CHECK(z.Z_units.size() == 4 * 64 - 3);
    CHECK(z.Z_units.total_length() == Rational(4 * 64, 729));
    CHECK(rotations_avoiding_zero_sets(z, z, 1000).empty());
    for (double e : z.E) {
        double best = INFINITY;
        for (const auto& iv : z.Z.intervals()) best = std::min(best, std::max({0.0, iv.lo - e, e - iv.hi}));
        CHECK(best < 1e-12);
    }
}

TEST_CASE("small curve assembly satisfies its certificates") {
    const int m_max = 3;
    ScheduleOptions so;
    const ScheduleResult sched = schedule_smoothings({exp_flat_profile()}, m_max, so);
    REQUIRE(sched.certificates_pass);
    AssemblyOptions ao;
    ao.m_max = m_max;
    const CurveAssembly A = assemble_curve(sched.results[0], sched.n, ao);
    const AssemblyReport& r = A.report;
    CHECK(std::abs(A.curve.total_turning - 2 * kPi) < 1e-6);
    CHECK(r.min_cross_scaled >= -1e-9);
    CHECK(A.curve.symmetry_order == 2 * sched.n);
    CHECK(r.E_in_Z);
    CHECK(r.Z_reflection_symmetric);
    CHECK(r.Z_rotation_symmetric);
    for (const MonotoneStep& m : r.monotone) CHECK(m.max_violation <= 0.0);
    // flat points sit on Z; the middle of a gap is strictly curved
    CHECK(r.cantor_max_distance < 1e-12);
    CHECK_FALSE(A.curve.flat_marks.empty());
    const IntervalSet& Z = A.zeros.Z;
    const double gap = 0.5 * (Z.intervals()[0].hi + Z.intervals()[1].lo);
    CHECK(A.curve.curvature_at_angle(gap) > 0.0);
    // support reconstruction stays on the curve
    const SupportFn s = support_of_curve(A.curve, 4096);
    CHECK(hausdorff(boundary_points(s), A.curve.vertices) < 1e-3 * A.curve.scale);
}

TEST_CASE("grid mismatch is rejected") {
    CHECK_THROWS_AS(minkowski_sum(support_of_circle(1, 128), support_of_circle(1, 256)), ArgumentError);
}
