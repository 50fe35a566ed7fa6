#include <benchmark/benchmark.h>

#include "hytab/bulldoze.hpp"
#include "hytab/extract.hpp"
#include "hytab/oracle.hpp"
#include "hytab/parser.hpp"
#include "hytab/tableau.hpp"

using namespace hytab;

namespace {

const char* const kFormulas[] = {
    "[]p -> [][]p",
    "~(<>p & []<>p)",
    "<>(p | q) & [](~p | <>q) -> []<>(p & ~q)",
    "@a [](a | []~a) & <>b -> @b p | <>(~p & <>b)",
    "[](p -> <>q) & [](q -> <>p) & <>p -> [][]p",
};

Formula formula(std::size_t n) { return parse(kFormulas[n], ParseOptions{{"a", "b"}}); }

CalculusSpec calculus(std::int64_t c) {
  switch (c) {
    case 0: return CalculusSpec::tab();
    case 1: return CalculusSpec::i4();
    case 2: return CalculusSpec::i4d();
    default: return CalculusSpec::po();
  }
}

void BM_Decide(benchmark::State& state) {
  const Formula f = formula(state.range(1));
  const CalculusSpec cal = calculus(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(decide(f, cal).verdict);
  state.SetLabel(cal.name);
}
BENCHMARK(BM_Decide)->ArgsProduct({{0, 1, 2, 3}, {0, 1, 2, 3, 4}});

void BM_Oracle(benchmark::State& state) {
  const Formula f = formula(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle_countermodel(f, FrameClass::SPO, state.range(0)).has_value());
}
BENCHMARK(BM_Oracle)->ArgsProduct({{2, 3}, {0, 1, 2}});

void BM_Bulldoze(benchmark::State& state) {
  const Decision d = decide(formula(state.range(0)), CalculusSpec::i4d());
  const ExtractedModel m = extract(d.open_branch(), CalculusSpec::i4d());
  for (auto _ : state) {
    const BulldozedModel bm = bulldoze(m);
    benchmark::DoNotOptimize(certify_class(bm, FrameClass::USPO, 4).passed());
  }
}
BENCHMARK(BM_Bulldoze)->Arg(1)->Arg(2)->Arg(4);

}  // namespace
BENCHMARK_MAIN();
