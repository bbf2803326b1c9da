// Microbenchmarks for the evaluation kernels: channel row accumulation,
// hash evaluation, and the exact metric engines on desk-size fixtures.

#include <benchmark/benchmark.h>

#include <wiretap/channels.hpp>
#include <wiretap/coding.hpp>
#include <wiretap/common.hpp>
#include <wiretap/hashing.hpp>
#include <wiretap/metrics.hpp>
#include <wiretap/xtx.hpp>

#include <cstddef>
#include <vector>

namespace {

using namespace wiretap;

void BM_ChannelRowAccumulate(benchmark::State& state) {
  const int w = int(state.range(0));
  const Channel ch = Channel::bsc(0.25, w);
  std::vector<double> acc(std::size_t{1} << w, 0.0);
  Word x = 0;
  for (auto _ : state) {
    ch.accumulate_row(x, 1.0, acc.data());
    x = (x + 0x9e3779b97f4a7c15ULL) & word_mask(w);
    benchmark::DoNotOptimize(acc.data());
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << w));
}
BENCHMARK(BM_ChannelRowAccumulate)->Arg(8)->Arg(12)->Arg(16);

void BM_HashEvalMatrix(benchmark::State& state) {
  const auto fam = HashFamily::matrix(12, 5);
  RngStream rng(1, 0);
  std::vector<std::pair<Word, Word>> inputs(1024);
  for (auto& [k, x] : inputs) {
    k = rng.bits(fam.key_bits());
    x = rng.bits(fam.input_bits());
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [k, x] = inputs[i++ & 1023];
    benchmark::DoNotOptimize(fam.eval(k, x));
  }
}
BENCHMARK(BM_HashEvalMatrix);

void BM_HashEvalGfMult(benchmark::State& state) {
  const auto fam = HashFamily::gf_mult(32, 16);
  RngStream rng(1, 1);
  std::vector<std::pair<Word, Word>> inputs(1024);
  for (auto& [k, x] : inputs) {
    k = rng.bits(fam.key_bits());
    x = rng.bits(fam.input_bits());
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [k, x] = inputs[i++ & 1023];
    benchmark::DoNotOptimize(fam.eval(k, x));
  }
}
BENCHMARK(BM_HashEvalGfMult);

void BM_AdvDsExactXtx(benchmark::State& state) {
  const auto scheme = build_xtx(HashFamily::gf_mult(4, 1), identity_code(4),
                                identity_code(5));
  const Channel tap = Channel::bsc(0.25, 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(adv_ds_exact(scheme.encryption(), tap).value);
  }
}
BENCHMARK(BM_AdvDsExactXtx)->Unit(benchmark::kMillisecond);

void BM_AdvMisCapacity(benchmark::State& state) {
  const CodeFn hamming =
      generator_matrix_code(4, 7, {0x46, 0x25, 0x13, 0x0f}, "gen(4->7)");
  const EncryptionFn xl = xor_linear_scheme(hamming, 3);
  const Channel tap = Channel::bsc(0.2, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(adv_mis(xl, tap).value);
  }
}
BENCHMARK(BM_AdvMisCapacity)->Unit(benchmark::kMillisecond);

void BM_AdvRsRExact(benchmark::State& state) {
  const int u = int(state.range(0));
  const CodeFn code = identity_code(u);
  const Channel ch = Channel::bsc(0.25, u);
  for (auto _ : state) {
    benchmark::DoNotOptimize(adv_rs_r_exact(code, ch).value);
  }
}
BENCHMARK(BM_AdvRsRExact)->Arg(6)->Arg(8)->Arg(10)
    ->Unit(benchmark::kMicrosecond);

void BM_DecryptionErrorExact(benchmark::State& state) {
  const CodeFn code = block_repetition_code(5, 2);
  const Channel ch = Channel::bsc(0.1, code.out_bits());
  for (auto _ : state) {
    benchmark::DoNotOptimize(decryption_error_exact(code, ch).value);
  }
}
BENCHMARK(BM_DecryptionErrorExact)->Unit(benchmark::kMicrosecond);

void BM_RateTable(benchmark::State& state) {
  const std::vector<double> ps = {0.5, 0.4, 0.3, 0.2, 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(rate_table(ps));
  }
}
BENCHMARK(BM_RateTable);

}  // namespace

BENCHMARK_MAIN();
