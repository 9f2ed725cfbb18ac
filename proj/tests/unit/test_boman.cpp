#include "doctest.h"
#include "oracles.hpp"

#include <cmath>

#include "minklab/blowup.hpp"
#include "minklab/boman.hpp"

using namespace minklab;

namespace {

BomanInput quadratic_input() {
    return {GaussExp{1, 1, 0.03}, quadratic_family([](int k) { return 0.0625 * std::pow(0.25, k); })};
}

} // namespace

TEST_CASE("GaussExp and t_k") {
    CHECK(GaussExp{2, 1, 0}(3) == doctest::Approx(0.25));
    CHECK(GaussExp{1, 0, 1}(2) == doctest::Approx(1.0 / 16));
    CHECK(t_k(2) == 1.0 / 16);
}

TEST_CASE("super-exponential proxy") {
    std::vector<int> k;
    std::vector<double> fast, slow;
    for (int i = 1; i <= 10; ++i) {
        k.push_back(i);
        fast.push_back(std::exp2(-double(i) * i));
        slow.push_back(std::exp2(-double(i)));
    }
    CHECK(superexp_check(k, fast, 4).pass);
    CHECK_FALSE(superexp_check(k, slow, 2).pass);
    CHECK(superexp_check({1, 2}, {0.5, 0.25}, 8).pass);
}

TEST_CASE("input validation flags a non-decreasing 2^k b_k") {
    const BomanInput bad{[](int k) { return std::exp2(-k); }, quartic_family()};
    const BomanValidation v = validate_boman_input(bad, 1, 6, {1});
    CHECK_FALSE(v.monotone_2k_b);
    CHECK_FALSE(v.pass());
    const BomanValidation ok = validate_boman_input(quadratic_input(), 1, 6, {1});
    CHECK(ok.monotone_2k_b);
    CHECK(ok.strictly_convex);
}

TEST_CASE("Boman construction interpolates b_k at t_k") {
    BomanOptions o;
    o.cells_per_shell = 512;
    const BomanOutput out = build_boman(quadratic_input(), 5, o);
    REQUIRE(out.K >= out.k_min);
    for (int k = out.K; k <= out.k_max; ++k) {
        CHECK(std::abs(out.f.eval(t_k(k), 1) - GaussExp{1, 1, 0.03}(k)) < 1e-8);
        CHECK(out.at(out.alpha, k) > 0.0);
    }
    for (double r : out.fprime_residual) CHECK(std::abs(r) < 1e-8);
    // f is convex and vanishes to second order at 0
    oracle::Gen g(5);
    const Interval dom = out.f.domain();
    for (int i = 0; i < 200; ++i) CHECK(out.f.eval(g.uniform(dom.lo, dom.hi), 2) >= -1e-12);
    CHECK(out.f(0.0) == 0.0);
    CHECK(out.f.eval(0.0, 1) == 0.0);
    CHECK(out.flat_below > 0.0);
    CHECK(out.f.eval(0.5 * out.flat_below, 2) == 0.0);
}

TEST_CASE("pliable structure of the Boman series") {
    BomanOptions o;
    o.cells_per_shell = 512;
    const BomanInput in = quadratic_input();
    const BomanOutput out = build_boman(in, 5, o);
    const PliableSeries ps = boman_series(out, in);
    REQUIRE_FALSE(ps.terms.empty());
    for (std::size_t i = 1; i < ps.terms.size(); ++i) CHECK(ps.terms[i - 1].index < ps.terms[i].index);
    const PliableReport rep = check_pliable(ps, 2, {0.5, 0.25, 0.125}, {1});
    CHECK(rep.supports_avoid_base);
    const PartialSumReport a = partial_sum_convergence(ps, 0, ps.terms.front().index, ps.terms.back().index);
    CHECK(a.value >= 0.0);
}
