#include <benchmark/benchmark.h>

#include <random>

#include "howson/hnn.hpp"
#include "howson/stallings.hpp"
#include "howson/witness.hpp"

using namespace howson;

namespace {
  std::vector<Word> random_generators(std::uint64_t seed,
                                      std::size_t   rank,
                                      std::size_t   count,
                                      std::size_t   length) {
    std::mt19937_64                              rng(seed);
    std::uniform_int_distribution<std::uint32_t> gen(0, std::uint32_t(rank - 1));
    std::bernoulli_distribution                  sign;
    std::vector<Word>                            out;
    while (out.size() < count) {
      Word w(rank);
      while (w.size() < length) {
        Letter x{gen(rng), std::int8_t(sign(rng) ? 1 : -1)};
        if (w.empty() || !w.letters().back().cancels(x)) {
          w.push_back(x);
        }
      }
      out.push_back(std::move(w));
    }
    return out;
  }

  void fold(benchmark::State& state) {
    auto gens = random_generators(1, 3, 8, std::size_t(state.range(0)));
    for (auto _ : state) {
      benchmark::DoNotOptimize(from_generators(3, gens));
    }
    state.SetComplexityN(state.range(0));
  }
  BENCHMARK(fold)->RangeMultiplier(4)->Range(8, 2048)->Complexity();

  void intersect(benchmark::State& state) {
    auto n  = std::size_t(state.range(0));
    auto g1 = from_generators(2, random_generators(2, 2, 4, n));
    auto g2 = from_generators(2, random_generators(3, 2, 4, n));
    for (auto _ : state) {
      benchmark::DoNotOptimize(pullback(g1, g2));
    }
  }
  BENCHMARK(intersect)->RangeMultiplier(4)->Range(8, 512);

  void normal_form(benchmark::State& state) {
    AscendingHnn    g(Endomorphism::parse("a -> ab\nb -> ba\n"));
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<std::uint32_t> pick(0, 2);
    std::bernoulli_distribution                  sign;
    RawHnnWord                                   raw;
    for (auto i = state.range(0); i > 0; --i) {
      auto x = pick(rng);
      int  s = sign(rng) ? 1 : -1;
      raw.push_back(x == 2 ? HnnToken::t(s) : HnnToken::base(Letter{x, std::int8_t(s)}));
    }
    for (auto _ : state) {
      benchmark::DoNotOptimize(g.normal_form(raw));
    }
  }
  BENCHMARK(normal_form)->RangeMultiplier(2)->Range(8, 64);

  void orbit_ranks(benchmark::State& state) {
    auto phi = Endomorphism::parse("a -> ab\nb -> ba\n");
    auto f   = proper_hnn_witness(phi);
    for (auto _ : state) {
      benchmark::DoNotOptimize(
          orbit_subgroup_ranks(phi, f, OneSidedImages{}, std::size_t(state.range(0))));
    }
  }
  BENCHMARK(orbit_ranks)->DenseRange(4, 12, 4);
}  // namespace
BENCHMARK_MAIN();
