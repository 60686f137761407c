#include <benchmark/benchmark.h>

#include "teich/fixtures.hpp"
#include "teich/kernels.hpp"
#include "teich/solver.hpp"

using namespace teich;

namespace {

struct Setup {
    std::shared_ptr<const PolarKernels> K;
    ModeField g;
    explicit Setup(int n) {
        GridSpec spec = GridSpec::standard(n);
        K = kernels_for(spec);
        g = K->analyze(fixtures::random_field(1, 0.3, spec).samples().values(), K->circles());
    }
};

const Setup& setup(int n) {
    static const Setup s128(128), s256(256), s512(512);
    return n == 128 ? s128 : n == 256 ? s256 : s512;
}

void BM_beurling(benchmark::State& st, Exec ex) {
    const Setup& s = setup(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(s.K->beurling(s.g, -1, ex));
}

void BM_cauchy(benchmark::State& st, Exec ex) {
    const Setup& s = setup(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(s.K->cauchy(s.g, 0, ex));
}

void BM_moment(benchmark::State& st, Exec ex) {
    const Setup& s = setup(static_cast<int>(st.range(0)));
    for (auto _ : st)
        for (int m = -8; m <= 8; ++m) benchmark::DoNotOptimize(s.K->moment(s.g, m, 2, 1, ex));
}

void BM_solve_bers(benchmark::State& st) {
    GridSpec spec = GridSpec::standard(static_cast<int>(st.range(0)));
    BeltramiField mu = fixtures::random_field(2, 0.3, spec);
    for (auto _ : st) benchmark::DoNotOptimize(solve_bers(mu));
}

}  // namespace

BENCHMARK_CAPTURE(BM_beurling, parallel, Exec::parallel)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_beurling, reference, Exec::reference)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_cauchy, parallel, Exec::parallel)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_cauchy, reference, Exec::reference)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_moment, parallel, Exec::parallel)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_moment, reference, Exec::reference)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_solve_bers)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
