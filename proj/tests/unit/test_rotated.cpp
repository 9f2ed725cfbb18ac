#include "doctest.h"

#include <cmath>

#include "minklab/error.hpp"
#include "minklab/rotated_graph.hpp"

using namespace minklab;

TEST_CASE("rotating a line gives a line of rotated slope") {
    // y = 0.5 x rotated by phi has slope tan(atan(0.5) + phi).
    const SmoothFn f = polynomial({0, 0.5}, {-1, 1});
    const double phi = 0.2;
    const RotatedFn r = rotate_graph(f, phi);
    const double slope = std::tan(std::atan(0.5) + phi);
    const double x = r.R(0.3);
    CHECK(r.f_phi.eval(x, 1) == doctest::Approx(slope).epsilon(1e-8));
    CHECK(std::abs(r.f_phi.eval(x, 2)) < 1e-6);
}

TEST_CASE("rotated parabola: points lie on the rotated graph") {
    const SmoothFn f = polynomial({0, 0, 1}, {-0.5, 0.5});
    const double phi = -0.3;
    const RotatedFn r = rotate_graph(f, phi);
    for (double x : {-0.4, -0.1, 0.2, 0.45}) {
        const double X = std::cos(phi) * x - std::sin(phi) * f(x);
        const double Y = std::sin(phi) * x + std::cos(phi) * f(x);
        CHECK(r.R(x) == doctest::Approx(X).epsilon(1e-14));
        CHECK(r.f_phi(X) == doctest::Approx(Y).epsilon(1e-9));
        const RotatedDerivs d = rotated_derivatives(r, x);
        // curvature is invariant under rotation
        const double k0 = 2.0 / std::pow(1 + 4 * x * x, 1.5);
        const double k1 = d.second / std::pow(1 + d.first * d.first, 1.5);
        CHECK(k1 == doctest::Approx(k0).epsilon(1e-10));
        CHECK(r.f_phi.eval(X, 2) == doctest::Approx(d.second).epsilon(1e-6));
    }
}

TEST_CASE("phi = 0 is the identity and steep rotations are refused") {
    const SmoothFn f = polynomial({0, 0, 1}, {-1, 1});
    CHECK(rotate_graph(f, 0.0).f_phi(0.7) == doctest::Approx(0.49));
    CHECK_THROWS_AS(rotate_graph(f, 1.2), RotationError);
}

TEST_CASE("C^r bound holds for small angles") {
    const SmoothFn f = polynomial({0, 0, 0.2}, {-1, 1});
    const CrBoundReport rep = cr_bound_check(f, {-0.05, 0.02, 0.1}, 2);
    CHECK(rep.all_pass);
    for (const CrBoundEntry& e : rep.entries) CHECK(e.measured <= e.bound);
}
