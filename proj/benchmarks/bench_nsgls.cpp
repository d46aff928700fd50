#include <benchmark/benchmark.h>

#include "nsgls/field.hpp"
#include "nsgls/solver.hpp"
#include "nsgls/spectral.hpp"

using namespace nsgls;

namespace {

VectorField random_field(int d, int n) {
    InitialSpec spec;
    spec.kind = InitialSpec::Kind::RandomSolenoidal;
    spec.seed = 7;
    return make_initial(spec, Grid(d, n, 6.283185307179586));
}

void BM_fft_roundtrip(benchmark::State& state) {
    const VectorField u = random_field(3, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        VectorField v = spectral::inverse(spectral::forward(u));
        benchmark::DoNotOptimize(v.comp[0][0]);
    }
}
BENCHMARK(BM_fft_roundtrip)->Arg(32)->Arg(64);

void BM_leray_project(benchmark::State& state) {
    const SpectralField f = spectral::forward(random_field(3, static_cast<int>(state.range(0))));
    for (auto _ : state) {
        SpectralField g = spectral::leray_project(f);
        benchmark::DoNotOptimize(g.comp[0][0]);
    }
}
BENCHMARK(BM_leray_project)->Arg(32)->Arg(64);

void BM_nonlinear_term(benchmark::State& state) {
    const SpectralField f = spectral::forward(random_field(3, static_cast<int>(state.range(0))));
    for (auto _ : state) {
        SpectralField g = solver::nonlinear_term_spectral(f);
        benchmark::DoNotOptimize(g.comp[0][0]);
    }
}
BENCHMARK(BM_nonlinear_term)->Arg(32)->Arg(64);

void BM_step(benchmark::State& state) {
    const SpectralField f = spectral::forward(random_field(3, static_cast<int>(state.range(0))));
    for (auto _ : state) {
        SpectralField g = solver::step_spectral(f, 1e-3);
        benchmark::DoNotOptimize(g.comp[0][0]);
    }
}
BENCHMARK(BM_step)->Arg(32)->Arg(64);

void BM_lp_norm(benchmark::State& state) {
    const VectorField u = random_field(3, 64);
    for (auto _ : state) {
        double v = lp_norm(u, 4.0);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_lp_norm);

} // namespace

BENCHMARK_MAIN();
