// Serial reference vs OpenMP kernels on the hot paths: syndrome evaluation,
// encoding, the decode oracle, and both repair protocols.

#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "coopmsr/coop_repair.hpp"
#include "coopmsr/msrcode.hpp"

using namespace coopmsr;

namespace {

const CodeParams& params_52() {
    static const CodeParams p = make_params(5, 2, 65537);
    return p;
}

const CodeParams& params_63() {
    static const CodeParams p = make_params(6, 3, 65537);
    return p;
}

const Codeword& codeword_for(const CodeParams& p) {
    static std::map<const CodeParams*, Codeword> cache;
    auto it = cache.find(&p);
    if (it == cache.end()) {
        std::mt19937_64 rng(1);
        it = cache.emplace(&p, random_codeword(p, rng)).first;
    }
    return it->second;
}

Exec exec_of(const benchmark::State& state) {
    return state.range(0) == 0 ? Exec::serial : Exec::parallel;
}

void bm_syndrome(benchmark::State& state, const CodeParams& p) {
    const Codeword& cw = codeword_for(p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(syndrome(p, cw, exec_of(state)));
    }
}

void bm_encode(benchmark::State& state, const CodeParams& p) {
    const Codeword& cw = codeword_for(p);
    const std::vector<Vec> data(cw.nodes.begin(), cw.nodes.begin() + p.k);
    for (auto _ : state) {
        benchmark::DoNotOptimize(encode(p, data, exec_of(state)));
    }
}

void bm_decode(benchmark::State& state, const CodeParams& p) {
    const Codeword& cw = codeword_for(p);
    std::vector<int> erased;
    for (int j = p.k + 1; j <= p.n; ++j) erased.push_back(j);
    for (auto _ : state) {
        benchmark::DoNotOptimize(erasure_decode(p, cw, erased, exec_of(state)));
    }
}

void bm_repair(benchmark::State& state, const CodeParams& p, int i1, int i2) {
    const Codeword& cw = codeword_for(p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cooperative_repair(p, cw, i1, i2, exec_of(state)));
    }
}

}  // namespace

BENCHMARK_CAPTURE(bm_syndrome, n5k2, params_52())->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_syndrome, n6k3, params_63())->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_encode, n5k2, params_52())->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_encode, n6k3, params_63())->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_decode, n5k2, params_52())->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_repair, n5k2_intra, params_52(), 1, 2)
    ->Arg(0)
    ->Arg(1)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_repair, n5k2_cross, params_52(), 1, 4)
    ->Arg(0)
    ->Arg(1)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_repair, n6k3_intra, params_63(), 1, 2)
    ->Arg(0)
    ->Arg(1)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_repair, n6k3_cross, params_63(), 1, 4)
    ->Arg(0)
    ->Arg(1)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
