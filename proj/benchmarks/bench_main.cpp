#include <benchmark/benchmark.h>

#include "qlab/core/density_matrix.hpp"
#include "qlab/core/gates.hpp"
#include "qlab/core/random.hpp"
#include "qlab/core/state_vector.hpp"
#include "qlab/ising/model.hpp"
#include "qlab/ising/qaoa.hpp"
#include "qlab/noise/noise.hpp"
#include "qlab/qec/codes.hpp"

namespace {

void BM_ApplySingleQubitGate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    qlab::RandomSource rng(1);
    qlab::StateVector s = qlab::StateVector::random(n, rng);
    const qlab::Matrix h = qlab::gates::H();
    int q = 0;
    for (auto _ : state) {
        s.apply(h, {q});
        q = (q + 1) % n;
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_ApplySingleQubitGate)->Arg(10)->Arg(16)->Arg(20);

void BM_ApplyCnot(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    qlab::RandomSource rng(2);
    qlab::StateVector s = qlab::StateVector::random(n, rng);
    const qlab::Matrix cx = qlab::gates::CNOT();
    for (auto _ : state) {
        s.apply(cx, {0, n - 1});
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_ApplyCnot)->Arg(10)->Arg(20);

void BM_KrausChannel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    qlab::RandomSource rng(3);
    qlab::DensityMatrix rho = qlab::DensityMatrix::random(n, rng);
    const qlab::KrausChannel ch = qlab::KrausChannel::depolarizing(0.05);
    for (auto _ : state) {
        rho.apply_channel(ch, {0});
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_KrausChannel)->Arg(4)->Arg(8);

void BM_ShorSyndromeRun(benchmark::State& state) {
    const qlab::CodeSpec code = qlab::shor_code();
    qlab::RandomSource rng(4);
    const qlab::StateVector psi = qlab::StateVector::random(1, rng);
    const qlab::PauliString err = qlab::PauliString::single(9, 4, 'Y');
    for (auto _ : state) benchmark::DoNotOptimize(qlab::run_code(code, psi, err, rng));
}
BENCHMARK(BM_ShorSyndromeRun)->Unit(benchmark::kMillisecond);

void BM_PauliFrameSampling(benchmark::State& state) {
    const qlab::CodeSpec code = qlab::shor_code();
    qlab::RandomSource rng(5);
    for (auto _ : state) benchmark::DoNotOptimize(qlab::sample_code_failure(code, 0.05, 'D', 10000, rng));
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_PauliFrameSampling)->Unit(benchmark::kMillisecond);

void BM_SamplePolarization(benchmark::State& state) {
    qlab::RandomSource rng(6);
    const auto shots = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(qlab::sample_polarization(0.3, shots, rng));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SamplePolarization)->Arg(1000)->Arg(100000);

void BM_QaoaEnergy(benchmark::State& state) {
    const qlab::IsingModel m = qlab::partition_to_ising({1, 2, 3, 4, 6, 10, 7, 5, 9, 8});
    qlab::QaoaParams p;
    p.gamma = {0.3, 0.7};
    p.beta = {0.4, 0.2};
    for (auto _ : state) benchmark::DoNotOptimize(qlab::qaoa_energy(m, p));
}
BENCHMARK(BM_QaoaEnergy);

}  // namespace

BENCHMARK_MAIN();
