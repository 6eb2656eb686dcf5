// Grid convolution backends across sizes: the direct O(n^2) sum, the banded
// sum for compact kernels and the FFT circulant path. The automatic backend
// picks among these, so the crossover points here justify its thresholds.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "nlfront/convolution.hpp"
#include "nlfront/kernels.hpp"

namespace {
std::vector<double> bump(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        w[i] = (1.0 - x * x) * (2.0 + std::sin(7.0 * x));
    }
    return w;
}

void run_backend(benchmark::State& state, const nlfront::kernels::Kernel& kernel,
                 nlfront::conv::Backend backend) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const double dx = 2.0 / static_cast<double>(n - 1);
    nlfront::conv::GridConvolver conv(kernel, dx, backend);
    const std::vector<double> w = bump(n);
    std::vector<double> out(n);
    for (auto _ : state) {
        conv.apply(w, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}

const nlfront::kernels::Kernel kPower =
    nlfront::kernels::normalize(nlfront::kernels::KernelSpec::power(1.5));
const nlfront::kernels::Kernel kTriangle =
    nlfront::kernels::normalize(nlfront::kernels::KernelSpec::triangle(1.0));
}  // namespace

static void BM_DirectPower(benchmark::State& state) {
    run_backend(state, kPower, nlfront::conv::Backend::direct);
}
static void BM_FftPower(benchmark::State& state) {
    run_backend(state, kPower, nlfront::conv::Backend::fft);
}
static void BM_BandedTriangle(benchmark::State& state) {
    run_backend(state, kTriangle, nlfront::conv::Backend::banded);
}
static void BM_AutoPower(benchmark::State& state) {
    run_backend(state, kPower, nlfront::conv::Backend::automatic);
}

BENCHMARK(BM_DirectPower)->RangeMultiplier(4)->Range(256, 16384);
BENCHMARK(BM_FftPower)->RangeMultiplier(4)->Range(256, 65536);
BENCHMARK(BM_BandedTriangle)->RangeMultiplier(4)->Range(256, 65536);
BENCHMARK(BM_AutoPower)->RangeMultiplier(4)->Range(256, 65536);

BENCHMARK_MAIN();
