#include "doctest.h"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>

#include "minklab/error.hpp"
#include "minklab/infconv.hpp"

using namespace minklab;

namespace {

double sup_diff(const InfConvResult& r, const std::function<double(double)>& ref) {
    double w = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) w = std::max(w, std::abs(r.h_values[i] - ref(r.x[i])));
    return w;
}

} // namespace

TEST_CASE("x^2 box 2x^2 is (2/3) x^2 on both routes") {
    const SmoothFn q = polynomial({0, 0, 1}, {-1, 1});
    const SmoothFn r = polynomial({0, 0, 2}, {-1, 1});
    const auto ref = [](double x) { return 2.0 / 3.0 * x * x; };
    CHECK(sup_diff(infconv_direct(q, r, {-1, 1}), ref) < 1e-6);
    CHECK(sup_diff(infconv_conjugate(q, r, {-1, 1}), ref) < 1e-6);
    CHECK(minimizer_map(q, r, 0.6) == doctest::Approx(0.4).epsilon(1e-10));
}

TEST_CASE("x^2/2 box x^2/2 is x^2/4") {
    const SmoothFn f = polynomial({0, 0, 0.5}, {-2, 2});
    const InfConvResult d = infconv_direct(f, f, {-2, 2});
    CHECK(sup_diff(d, [](double x) { return x * x / 4.0; }) < 1e-9);
    for (std::size_t i = 0; i < d.x.size(); i += 100) CHECK(d.mu[i] == doctest::Approx(d.x[i] / 2).epsilon(1e-9));
}

TEST_CASE("convolving with the zero function gives the windowed minimum") {
    const SmoothFn f = polynomial({0.09, -0.6, 1}, {-1, 1});   // (x - 0.3)^2
    const SmoothFn z = polynomial({0.0}, {-1, 1});
    const InfConvResult d = infconv_direct(f, z, {-1.5, 1.5});
    const auto ref = [](double x) {
        const double y = std::clamp(0.3, std::max(-1.0, x - 1.0), std::min(1.0, x + 1.0));
        return (y - 0.3) * (y - 0.3);
    };
    CHECK(sup_diff(d, ref) < 1e-9);
}

TEST_CASE("random convex polynomial pairs: routes agree with brute force (property)") {
    oracle::Gen g(2024);
    for (int t = 0; t < 10; ++t) {
        const auto cf = oracle::convex_poly(g), cg = oracle::convex_poly(g);
        const SmoothFn f = polynomial(cf, {-1, 1}), gg = polynomial(cg, {-1, 1});
        InfConvOptions o;
        o.grid_n = 65;
        const InfConvResult d = infconv_direct(f, gg, {-1.5, 1.5}, o);
        const InfConvResult c = infconv_conjugate(f, gg, {-1.5, 1.5}, o);
        for (std::size_t i = 0; i < d.x.size(); ++i) {
            const double x = d.x[i];
            const double ylo = std::max(-1.0, x - 1.0), yhi = std::min(1.0, x + 1.0);
            const double ref = oracle::brute_infconv([&](double y) { return oracle::poly_eval(cf, y); },
                                                     [&](double y) { return oracle::poly_eval(cg, y); }, x, ylo, yhi);
            CHECK(d.h_values[i] == doctest::Approx(ref).epsilon(1e-9));
            CHECK(std::abs(c.h_values[i] - d.h_values[i]) < 1e-6);
        }
    }
}

TEST_CASE("gradient and Hessian identities at interior points (property)") {
    oracle::Gen g(7);
    for (int t = 0; t < 5; ++t) {
        const SmoothFn f = polynomial(oracle::convex_poly(g), {-1, 1});
        const SmoothFn gg = polynomial(oracle::convex_poly(g), {-1, 1});
        for (int i = 0; i < 20; ++i) {
            const double x = g.uniform(-0.3, 0.3);
            const MinPoint mp = minimize_at(f, gg, x);
            if (mp.boundary) continue;
            const SmoothnessDiag s = smoothness_diag(f, gg, x);
            CHECK(s.res_grad < 1e-6);
            CHECK(s.res_hess < 1e-6);
            CHECK(s.j_mu > 0.0);
            CHECK(s.j_mu < 1.0);
        }
    }
}

TEST_CASE("infconv jet derivatives match the closed form") {
    const SmoothFn q = polynomial({0, 0, 1}, {-1, 1});
    const SmoothFn r = polynomial({0, 0, 2}, {-1, 1});
    const SmoothFn h = infconv_fn(q, r, {-1, 1});
    CHECK(h.eval(0.3, 1) == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(h.eval(0.3, 2) == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
    CHECK(std::abs(h.eval(0.3, 3)) < 1e-8);
}

TEST_CASE("discrete conjugate of x^2 is s^2/4") {
    std::vector<double> x, f;
    for (int i = 0; i <= 2000; ++i) {
        x.push_back(-2.0 + 4.0 * i / 2000);
        f.push_back(x.back() * x.back());
    }
    const DiscreteConjugate c = discrete_conjugate(x, f);
    for (double s : {-3.0, -1.0, 0.0, 0.5, 2.5}) CHECK(c.eval(s) == doctest::Approx(s * s / 4).epsilon(1e-5));
    CHECK(back_conjugate(c, 0.7) == doctest::Approx(0.49).epsilon(1e-5));
}

TEST_CASE("nonconvex input is rejected") {
    const SmoothFn cubic = polynomial({0, 0, 0, 1}, {-1, 1});
    const SmoothFn q = polynomial({0, 0, 1}, {-1, 1});
    CHECK_THROWS_AS(require_convex(cubic, "f", 1e-9), ValidationError);
    CHECK_THROWS_AS(infconv_direct(cubic, q, {-1, 1}), ValidationError);
}
