// Serial vs OpenMP fingerprinting of an enumerated PGL2(q).
#include <benchmark/benchmark.h>

#include "bbgroup/blackbox.hpp"
#include "bbgroup/verify.hpp"

namespace {

struct Enumerated {
  bbg::Field field;
  std::vector<bbg::Mat2> elements;
  bbg::OrderOracle oracle;
};

Enumerated enumerate(std::uint32_t p, unsigned k) {
  Enumerated e{bbg::Field::create(p, k, 1), {}, bbg::OrderOracle::for_group(bbg::Flavor::PGL2, p, k)};
  bbg::Rng rng(1);
  const auto gens = bbg::standard_generators(bbg::Flavor::PGL2, e.field, rng);
  e.elements = bbg::closure_enumerate(gens, bbg::Flavor::PGL2);
  return e;
}

void BM_FingerprintSerial(benchmark::State& state) {
  const auto e = enumerate(static_cast<std::uint32_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(bbg::fingerprint_serial(e.oracle, e.elements));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(e.elements.size()));
}

void BM_FingerprintParallel(benchmark::State& state) {
  const auto e = enumerate(static_cast<std::uint32_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(bbg::fingerprint(e.oracle, e.elements));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(e.elements.size()));
}

}  // namespace

BENCHMARK(BM_FingerprintSerial)->Arg(13)->Arg(31)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FingerprintParallel)->Arg(13)->Arg(31)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
