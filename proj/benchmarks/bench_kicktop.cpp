// Micro-benchmarks for the hot kernels: coherent-state generation (the
// Krylov path versus the direct formula where it still applies), Floquet
// construction, and the streamed Husimi row evaluation.

#include <benchmark/benchmark.h>

#include <random>

#include "kicktop/coherent.hpp"
#include "kicktop/floquet.hpp"
#include "kicktop/husimi.hpp"

using namespace kicktop;

namespace {

void BM_KrylovCoherentState(benchmark::State& state) {
    const SpinSystem sys(state.range(0), 0.0, 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(make_coherent_state(sys, 1.1, 0.7).amplitudes);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KrylovCoherentState)->RangeMultiplier(4)->Range(64, 1 << 11)->Unit(benchmark::kMillisecond)->Complexity();

void BM_DirectOracle(benchmark::State& state) {
    const SpinSystem sys(state.range(0), 0.0, 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(direct_scs_oracle(sys, 1.1, 0.7).amplitudes);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DirectOracle)->RangeMultiplier(4)->Range(64, kOracleMaxJ)->Unit(benchmark::kMillisecond)->Complexity();

void BM_BuildFloquet(benchmark::State& state) {
    const SpinSystem sys(state.range(0), 11.0 * M_PI / 19.0, 8.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_floquet(sys, Parity::odd));
    }
}
BENCHMARK(BM_BuildFloquet)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMillisecond);

void BM_HusimiRow(benchmark::State& state) {
    const long j = state.range(0);
    const SpinSystem sys(j, 0.0, 0.0);
    const PhaseGrid grid(200, 400);
    const CoherentFrame frame(sys, grid);
    std::mt19937_64 gen(5);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd states(sys.dim(), 64);
    for (long c = 0; c < states.cols(); ++c) {
        for (long r = 0; r < states.rows(); ++r) states(r, c) = Complex(g(gen), g(gen));
        states.col(c).normalize();
    }
    const Eigen::MatrixXcd states_t = states.transpose();
    Eigen::MatrixXcd out;
    int row = 0;
    for (auto _ : state) {
        husimi_row_amplitudes(frame, row, states_t, out);
        benchmark::DoNotOptimize(out);
        row = (row + 1) % grid.n_theta;
    }
}
BENCHMARK(BM_HusimiRow)->RangeMultiplier(4)->Range(256, 1 << 10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
