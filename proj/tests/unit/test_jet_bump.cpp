#include "doctest.h"
#include "oracles.hpp"

#include <cmath>

#include "minklab/bump.hpp"
#include "minklab/jet.hpp"
#include "minklab/smooth_fn.hpp"

using namespace minklab;

TEST_CASE("jet of exp matches closed-form derivatives") {
    const Jet e = exp(Jet::variable(6, 0.3));
    for (int k = 0; k <= 6; ++k) CHECK(e.derivative(k) == doctest::Approx(std::exp(0.3)).epsilon(1e-13));
}

TEST_CASE("jet product, quotient and composition") {
    const Jet x = Jet::variable(5, 2.0);
    const Jet p = x * x * x;                 // x^3
    CHECK(p.derivative(1) == doctest::Approx(12.0));
    CHECK(p.derivative(2) == doctest::Approx(12.0));
    CHECK(p.derivative(3) == doctest::Approx(6.0));
    CHECK(p.derivative(4) == doctest::Approx(0.0));
    const Jet q = p / x;                     // x^2
    CHECK(q.derivative(1) == doctest::Approx(4.0));
    CHECK(q.derivative(3) == doctest::Approx(0.0).epsilon(1e-12));
    const Jet r = reciprocal(x);             // 1/x, d^k = (-1)^k k! / x^{k+1}
    CHECK(r.derivative(3) == doctest::Approx(-6.0 / 16.0));
    CHECK(pow_int(x, 4).derivative(2) == doctest::Approx(48.0));
}

TEST_CASE("jet scaling and differentiation") {
    const Jet e = exp(Jet::variable(4, 0.0));
    const Jet s = e.scaled(2.0);             // e^{2t}
    CHECK(s.derivative(3) == doctest::Approx(8.0));
    CHECK(e.differentiate().derivative(2) == doctest::Approx(1.0));
    CHECK(e.with_degree(2).degree() == 2);
}

TEST_CASE("smoothstep agrees with the reference and is flat at the ends") {
    for (double u : {0.05, 0.2, 0.5, 0.71, 0.93})
        CHECK(smoothstep(Jet::variable(0, u)).value() == doctest::Approx(oracle::smoothstep(u)).epsilon(1e-14));
    const Jet lo = smoothstep(Jet::variable(6, 1e-3));
    for (int k = 0; k <= 6; ++k) CHECK(lo.derivative(k) == 0.0);
    CHECK(smoothstep(Jet::variable(3, 1.0)).value() == 1.0);
    CHECK(smoothstep(Jet::variable(3, 0.5)).value() == doctest::Approx(0.5));
}

TEST_CASE("plateau bumps have the documented support and core") {
    CHECK(phi_jet(0.0, 2).value() == 1.0);
    CHECK(phi_jet(0.5, 2).value() == 1.0);
    CHECK(phi_jet(1.0, 2).value() == 0.0);
    CHECK(phi_jet(-1.2, 2).value() == 0.0);
    const double mid = phi_jet(0.75, 0).value();
    CHECK(mid > 0.0);
    CHECK(mid < 1.0);
}

TEST_CASE("dyadic partition of unity (property)") {
    oracle::Gen g(11);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = std::exp(g.uniform(std::log(1e-6), std::log(1e6)));
        worst = std::max(worst, std::abs(dyadic_sum(x) - 1.0));
    }
    CHECK(worst < 1e-12);
    CHECK(psi_jet(0.5, 0).value() == 0.0);
    CHECK(psi_jet(1.6, 0).value() == 0.0);
    const BumpSystem b = make_bump_system(200);
    CHECK(b.partition_residual < 1e-12);
}

TEST_CASE("polynomial SmoothFn derivatives match the oracle (property)") {
    oracle::Gen g(3);
    for (int t = 0; t < 20; ++t) {
        const auto c = oracle::convex_poly(g);
        const SmoothFn f = polynomial(c, {-1, 1});
        const double x = g.uniform(-1, 1);
        for (int k = 0; k <= 4; ++k)
            CHECK(f.eval(x, k) == doctest::Approx(oracle::poly_eval(c, x, k)).epsilon(1e-12));
    }
}

TEST_CASE("integrate_twice reproduces a known antiderivative") {
    // f'' = cos x, f(0) = 0, f'(0) = 0  =>  f = 1 - cos x
    const SmoothFn f = integrate_twice({0.0, 2.0},
                                       [](double x, int n) {
                                           Jet j(n);
                                           for (int k = 0; k <= n; ++k) {
                                               const double d[4] = {std::cos(x), -std::sin(x), -std::cos(x), std::sin(x)};
                                               double fact = 1.0;
                                               for (int i = 2; i <= k; ++i) fact *= i;
                                               j.coeff(k) = d[k % 4] / fact;
                                           }
                                           return j;
                                       },
                                       uniform_nodes({0.0, 2.0}, 4097), 0.0, 0.0);
    for (double x : {0.1, 0.7, 1.3, 2.0}) {
        CHECK(f(x) == doctest::Approx(1.0 - std::cos(x)).epsilon(1e-9));
        CHECK(f.eval(x, 1) == doctest::Approx(std::sin(x)).epsilon(1e-9));
    }
}

TEST_CASE("domain and order violations raise") {
    const SmoothFn f = polynomial({0, 0, 1}, {-1, 1}, 3);
    CHECK_THROWS_AS(f.eval(1.5), Error);
    CHECK_THROWS_AS(f.eval(0.0, 5), Error);
}
