// Serial vs OpenMP timings of the hot loops.

#include <benchmark/benchmark.h>

#include "vqst/analytic.hpp"
#include "vqst/kernels.hpp"
#include "vqst/metrics.hpp"
#include "vqst/oracle.hpp"
#include "vqst/sweep.hpp"

using namespace vqst;

namespace {

Exec mode(const benchmark::State& s) { return s.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_IntegratePanels(benchmark::State& s) {
    const SystemParams p;
    const SpectralTerms f = spectral_terms(p);
    const auto edges = panel_edges(32000.0, {{0.0, 5.0}, {0.0, 90.0}, {0.0, 200.0}}, 1.0 / 32.0);
    for (auto _ : s) benchmark::DoNotOptimize(integrate_panels(f, edges, mode(s)));
    s.counters["panels"] = static_cast<double>(edges.size() - 1);
}

void BM_BinRhs(benchmark::State& s) {
    const std::size_t n = 40001;
    std::vector<cplx> y(4 * n, cplx(0.1, 0.2)), dy(4 * n);
    std::vector<double> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = -50.0 + 100.0 * j / (n - 1);
    const cplx src[4] = {1.0, 0.5, 0.25, 0.125};
    for (auto _ : s) {
        bin_rhs(y.data(), dy.data(), u.data(), n, src, 0.3, mode(s));
        benchmark::ClobberMemory();
    }
}

void BM_OutputSpectrum(benchmark::State& s) {
    const SystemParams p;
    const auto grid = uniform_grid(p.pulse.omega_ph, 50.0, 20001);
    for (auto _ : s) benchmark::DoNotOptimize(output_spectrum(p, grid, mode(s)));
}

void BM_RunGrid(benchmark::State& s) {
    SweepSpec spec = preset("fig5a");
    spec.axes[0].points = 21;
    spec.axes[1].points = 21;
    for (auto _ : s) benchmark::DoNotOptimize(run_grid(spec, mode(s)));
}

void BM_Oracle(benchmark::State& s) {
    const SystemParams p;
    IntegratorConfig cfg;
    cfg.exec = mode(s);
    for (auto _ : s) benchmark::DoNotOptimize(integrate(p, cfg).P);
}

} // namespace

BENCHMARK(BM_IntegratePanels)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_BinRhs)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_OutputSpectrum)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_RunGrid)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Oracle)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
