#include <benchmark/benchmark.h>

#include <cmath>

#include "minklab/cantor.hpp"
#include "minklab/curve.hpp"
#include "minklab/hinge.hpp"
#include "minklab/infconv.hpp"

using namespace minklab;

namespace {

void BM_InfconvDirect(benchmark::State& st) {
    const SmoothFn f = polynomial({0, 0, 1, 0.1, 0.5}, {-1, 1});
    const SmoothFn g = polynomial({0, 0.2, 2}, {-1, 1});
    InfConvOptions o;
    o.grid_n = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(infconv_direct(f, g, {-2, 2}, o));
}
BENCHMARK(BM_InfconvDirect)->Arg(257)->Arg(1025)->Unit(benchmark::kMillisecond);

void BM_InfconvConjugate(benchmark::State& st) {
    const SmoothFn f = polynomial({0, 0, 1, 0.1, 0.5}, {-1, 1});
    const SmoothFn g = polynomial({0, 0.2, 2}, {-1, 1});
    InfConvOptions o;
    o.primal_n = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(infconv_conjugate(f, g, {-2, 2}, o));
}
BENCHMARK(BM_InfconvConjugate)->Arg(4097)->Arg(16385)->Unit(benchmark::kMillisecond);

void BM_CantorDifferenceExact(benchmark::State& st) {
    const ExactCantorSpec spec{Rational(0), Rational(1), {Rational(1, 3)}, static_cast<int>(st.range(0))};
    const ExactIntervalSet C = build_cantor(spec);
    for (auto _ : st) benchmark::DoNotOptimize(difference_set(C, C));
}
BENCHMARK(BM_CantorDifferenceExact)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);

void BM_CantorSumDouble(benchmark::State& st) {
    const CantorSpec spec{0.0, 1.0, {1.0 / 3.0}, static_cast<int>(st.range(0))};
    const IntervalSet C = build_cantor(spec);
    for (auto _ : st) benchmark::DoNotOptimize(sum_sets(C, C));
}
BENCHMARK(BM_CantorSumDouble)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);

void BM_Smoothing(benchmark::State& st) {
    const SmoothFn f = exp_flat_profile();
    for (auto _ : st) benchmark::DoNotOptimize(build_smoothing(f, 0.01, 0.05));
}
BENCHMARK(BM_Smoothing)->Unit(benchmark::kMillisecond);

void BM_SupportMinkowski(benchmark::State& st) {
    const std::size_t N = static_cast<std::size_t>(st.range(0));
    const SupportFn a = support_of_ellipse(2.0, 1.0, N), b = support_of_ellipse(0.5, 1.5, N);
    for (auto _ : st) benchmark::DoNotOptimize(minkowski_sum(a, b));
}
BENCHMARK(BM_SupportMinkowski)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
