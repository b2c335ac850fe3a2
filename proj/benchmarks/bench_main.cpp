#include <benchmark/benchmark.h>

#include "ordsum/notation.hpp"
#include "ordsum/realize.hpp"
#include "ordsum/rng.hpp"
#include "ordsum/sums.hpp"

using namespace ordsum;

namespace {

std::vector<Ordinal> sample_ordinals(std::size_t n) {
  Rng g(421);
  std::vector<Ordinal> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_ordinal(g, 3, 4, 9));
  return out;
}

std::vector<OmegaSequence> sample_sequences(std::size_t n) {
  Rng g(431);
  std::vector<OmegaSequence> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_sequence(g));
  return out;
}

void BM_natural_sum(benchmark::State& state) {
  auto xs = sample_ordinals(64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(natural_sum(xs[i % 64], xs[(i + 17) % 64]));
    ++i;
  }
}
BENCHMARK(BM_natural_sum);

void BM_natural_product(benchmark::State& state) {
  auto xs = sample_ordinals(64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(natural_product(xs[i % 64], xs[(i + 29) % 64]));
    ++i;
  }
}
BENCHMARK(BM_natural_product);

void BM_sum_s(benchmark::State& state) {
  auto ss = sample_sequences(64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sum_s(ss[i % 64]));
    ++i;
  }
}
BENCHMARK(BM_sum_s);

void BM_realize_and_locate(benchmark::State& state) {
  auto ss = sample_sequences(32);
  Rng g(443);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& s = ss[i % 32];
    BlockPlan p = realize(s);
    if (!p.claimed_total().is_zero())
      benchmark::DoNotOptimize(locate(p, random_below(g, p.claimed_total())));
    ++i;
  }
}
BENCHMARK(BM_realize_and_locate);

void BM_parse_print(benchmark::State& state) {
  auto xs = sample_ordinals(64);
  std::vector<std::string> texts;
  for (const auto& x : xs) texts.push_back(print_ordinal(x));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(print_ordinal(parse_ordinal(texts[i % 64])));
    ++i;
  }
}
BENCHMARK(BM_parse_print);

}  // namespace

BENCHMARK_MAIN();
