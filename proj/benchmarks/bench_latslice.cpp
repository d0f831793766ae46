#include <benchmark/benchmark.h>

#include <latslice/gaussian.hpp>
#include <latslice/slicing.hpp>

using namespace latslice;

static void BM_theta_zd(benchmark::State& state) {
    Lattice lat = Lattice::integer(static_cast<int>(state.range(0)));
    GaussianParam s(1.5);
    for (auto _ : state) benchmark::DoNotOptimize(theta(lat, s).value);
}
BENCHMARK(BM_theta_zd)->DenseRange(2, 5);

static void BM_klein_sample(benchmark::State& state) {
    Lattice lat = Lattice::integer(static_cast<int>(state.range(0)));
    KleinSampler sampler(lat, GaussianParam(2.0));
    Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(sampler.sample_coeffs(rng));
}
BENCHMARK(BM_klein_sample)->DenseRange(2, 6);

static void BM_exact_sampler_build(benchmark::State& state) {
    Lattice lat = Lattice::integer(static_cast<int>(state.range(0)));
    GaussianParam s(1.5);
    for (auto _ : state) {
        ExactSampler sampler(lat, s);
        benchmark::DoNotOptimize(sampler.support_size());
    }
}
BENCHMARK(BM_exact_sampler_build)->DenseRange(2, 4);

static void BM_enumerate_ball(benchmark::State& state) {
    int d = static_cast<int>(state.range(0));
    Lattice lat = Lattice::integer(d);
    Body ball = Body::ball(d, 2.5);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_in_body(lat, ball).size());
}
BENCHMARK(BM_enumerate_ball)->DenseRange(2, 6);

static void BM_best_slice_exact(benchmark::State& state) {
    int d = static_cast<int>(state.range(0));
    Lattice lat = Lattice::integer(d);
    PointSet ps = enumerate_in_body(lat, Body::ball(d, 1.8));
    for (auto _ : state) benchmark::DoNotOptimize(best_slice_exact(lat, ps).on_count);
}
BENCHMARK(BM_best_slice_exact)->DenseRange(2, 5);

static void BM_randomized_finder(benchmark::State& state) {
    int d = static_cast<int>(state.range(0));
    Lattice lat = Lattice::integer(d);
    Body cube = Body::box(Vec::Ones(d));
    PointSet ps = enumerate_in_body(lat, cube);
    FinderConfig cfg;
    for (auto _ : state) {
        Rng rng(7);
        benchmark::DoNotOptimize(randomized_finder(lat, cube, ps, cfg, rng).on_count);
    }
}
BENCHMARK(BM_randomized_finder)->DenseRange(2, 5);

BENCHMARK_MAIN();
