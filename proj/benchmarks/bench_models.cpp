#include <benchmark/benchmark.h>

#include <string>

#include "limitnerve/model.hpp"

using namespace limitnerve;

namespace {

std::string corpus(const char* file) { return std::string(LIMITNERVE_CORPUS_DIR) + "/" + file; }

void BM_TorusNucleus(benchmark::State& state) {
  const WreathRecursion rec = load_recursion(corpus("torus.rec"));
  for (auto _ : state) {
    GroupEngine engine(rec);
    benchmark::DoNotOptimize(compute_nucleus(engine).size());
  }
}
BENCHMARK(BM_TorusNucleus);

void BM_TorusNerve(benchmark::State& state) {
  GroupEngine engine(load_recursion(corpus("torus.rec")));
  const Nucleus nucleus = compute_nucleus(engine);
  for (auto _ : state) benchmark::DoNotOptimize(build_nerve(engine, nucleus).j0.euler());
}
BENCHMARK(BM_TorusNerve);

void BM_DirectJn(benchmark::State& state) {
  GroupEngine engine(load_recursion(corpus("torus.rec")));
  const Nucleus nucleus = compute_nucleus(engine);
  const Nerve nerve = build_nerve(engine, nucleus);
  const auto level = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(direct_Jn(nerve, level).complex.vertex_count());
}
BENCHMARK(BM_DirectJn)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_CutPaste(benchmark::State& state) {
  GroupEngine engine(load_recursion(corpus("torus.rec")));
  const Nucleus nucleus = compute_nucleus(engine);
  const Nerve nerve = build_nerve(engine, nucleus);
  const auto level = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    CutPasteTower tower(nerve);
    for (std::size_t n = 0; n < level; ++n) tower.advance();
    benchmark::DoNotOptimize(tower.assemble().euler());
  }
}
BENCHMARK(BM_CutPaste)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
