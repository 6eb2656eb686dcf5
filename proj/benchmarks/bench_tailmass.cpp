// Tail-mass and tail-integral evaluation cost per kernel family, plus the
// boundary-flux quadrature on a live field state. These dominate the per-step
// cost of moving the free boundaries, so regressions here show up directly in
// simulation wall time.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "nlfront/kernels.hpp"
#include "nlfront/model.hpp"
#include "nlfront/simulator.hpp"

namespace {
nlfront::kernels::Kernel kernel_for(int idx) {
    using nlfront::kernels::KernelSpec;
    using nlfront::kernels::normalize;
    switch (idx) {
        case 0: return normalize(KernelSpec::power(1.5));
        case 1: return normalize(KernelSpec::power(2.0));
        case 2: return normalize(KernelSpec::gauss(1.0));
        default: return normalize(KernelSpec::triangle(1.0));
    }
}
}  // namespace

static void BM_TailMass(benchmark::State& state) {
    const auto kernel = kernel_for(static_cast<int>(state.range(0)));
    double a = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel.tail_mass(a));
        a = a < 8.0 ? a + 0.1 : 0.1;  // sweep distances so branches stay honest
    }
}

static void BM_PartialTailIntegral(benchmark::State& state) {
    const auto kernel = kernel_for(static_cast<int>(state.range(0)));
    double a = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel.partial_tail_integral(a));
        a = a < 8.0 ? a + 0.1 : 0.1;
    }
}

static void BM_BoundaryFlux(benchmark::State& state) {
    using namespace nlfront;
    model::ModelParams params;
    params.h0 = 10.0;
    sim::SimConfig config;
    config.dx = 0.25;
    config.dt = 0.02;
    config.T = 1.0;
    const auto G = model::GFunction::monod(2.0);
    const auto J = kernel_for(static_cast<int>(state.range(0)));
    const auto K = kernels::normalize(kernels::KernelSpec::triangle(1.0));
    sim::Simulator solver(params, G, J, K, J, config);
    sim::InitProfile init;
    auto s = solver.initialize(init);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solver.boundary_flux(s));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(s.n()));
}

BENCHMARK(BM_TailMass)->DenseRange(0, 3);
BENCHMARK(BM_PartialTailIntegral)->DenseRange(0, 3);
BENCHMARK(BM_BoundaryFlux)->DenseRange(0, 3);

BENCHMARK_MAIN();
