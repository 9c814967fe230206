#include <benchmark/benchmark.h>

#include <random>

#include "mpgemm/experiments.hpp"
#include "mpgemm/gemm.hpp"
#include "mpgemm/metrics.hpp"
#include "mpgemm/refinement.hpp"

using namespace mpgemm;

namespace {

MatrixF32 inputs(int n, std::uint64_t stream) {
    return generate_matrix(n, Distribution{-1.0f, 1.0f}, 7, stream);
}

void report_flops(benchmark::State& state, int n, int stages) {
    state.counters["flops/s"] = benchmark::Counter(
        static_cast<double>(state.iterations()) *
            static_cast<double>(flops_gemm(n, n, n, stages, false)),
        benchmark::Counter::kIsRate);
}

} // namespace

static void BM_RoundToHalf(benchmark::State& state) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<float> dist(-100.0f, 100.0f);
    std::vector<float> values(4096);
    for (auto& v : values) {
        v = dist(rng);
    }
    for (auto _ : state) {
        std::uint32_t acc = 0;
        for (float v : values) {
            acc += round_to_half(v).bits();
        }
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * values.size());
}
BENCHMARK(BM_RoundToHalf);

static void BM_MmaSync(benchmark::State& state) {
    const MatrixF16 a = round_matrix(inputs(16, 0));
    const MatrixF16 b = round_matrix(inputs(16, 1));
    const Fragment af = load_fragment(a, FragmentRole::MatrixA, Layout::RowMajor);
    const Fragment bf = load_fragment(b, FragmentRole::MatrixB, Layout::RowMajor);
    const Fragment cf = fill_fragment(FragmentRole::Accumulator, 0.0f);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mma_sync(af, bf, cf));
    }
    state.SetItemsProcessed(state.iterations() * 2 * 16 * 16 * 16);
}
BENCHMARK(BM_MmaSync);

static void BM_GemmMixed(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const MatrixF16 a = round_matrix(inputs(n, 0));
    const MatrixF16 b = round_matrix(inputs(n, 1));
    const MatrixF32 c(n, n);
    GemmConfig cfg;
    cfg.beta = 0.0f;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gemm_mixed(a, b, c, cfg));
    }
    report_flops(state, n, 1);
}
BENCHMARK(BM_GemmMixed)->Arg(256)->Arg(512)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

static void BM_GemmOracle(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const MatrixF32 a = inputs(n, 0);
    const MatrixF32 b = inputs(n, 1);
    const MatrixF32 c(n, n);
    GemmConfig cfg;
    cfg.beta = 0.0f;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gemm_oracle(a, b, c, cfg));
    }
    report_flops(state, n, 1);
}
BENCHMARK(BM_GemmOracle)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_GemmKahan(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const MatrixF16 a = round_matrix(inputs(n, 0));
    const MatrixF16 b = round_matrix(inputs(n, 1));
    const MatrixF32 c(n, n);
    GemmConfig cfg;
    cfg.beta = 0.0f;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gemm_kahan(a, b, c, cfg));
    }
    report_flops(state, n, 1);
}
BENCHMARK(BM_GemmKahan)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_RefinedTwoSided(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const MatrixF32 a = inputs(n, 0);
    const MatrixF32 b = inputs(n, 1);
    const MatrixF32 c(n, n);
    GemmConfig cfg;
    cfg.beta = 0.0f;
    const ResidualPair sa = split(a);
    const ResidualPair sb = split(b);
    for (auto _ : state) {
        benchmark::DoNotOptimize(two_sided_from_split(sa, sb, c, cfg));
    }
    report_flops(state, n, 4);
}
BENCHMARK(BM_RefinedTwoSided)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_GemmBatched(benchmark::State& state) {
    const int count = static_cast<int>(state.range(0));
    std::vector<MatrixF16> as, bs;
    std::vector<MatrixF32> cs;
    for (int i = 0; i < count; ++i) {
        as.push_back(round_matrix(generate_matrix(16, Distribution{}, 7, 3 * i)));
        bs.push_back(round_matrix(generate_matrix(16, Distribution{}, 7, 3 * i + 1)));
        cs.emplace_back(16, 16);
    }
    GemmConfig cfg;
    cfg.beta = 0.0f;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gemm_batched(as, bs, cs, cfg));
    }
    state.counters["flops/s"] = benchmark::Counter(
        static_cast<double>(state.iterations()) * count *
            static_cast<double>(flops_gemm(16, 16, 16, 1, false)),
        benchmark::Counter::kIsRate);
}
BENCHMARK(BM_GemmBatched)->Arg(1024)->Arg(16384)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
