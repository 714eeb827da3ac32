#include <benchmark/benchmark.h>

#include <random>

#include "dhp/bounds.hpp"
#include "dhp/groups.hpp"
#include "dhp/oracle.hpp"
#include "dhp/reduction.hpp"

using namespace dhp;

namespace {

CyclicGroup make_group(int backend, const BigNat& p) {
  switch (backend) {
    case 0: return CyclicGroup::zp_additive(p);
    case 1: {
      const MultSubgroupParams m = find_mult_subgroup(p);
      return CyclicGroup::mult_subgroup(m.q, p, m.h);
    }
    default: return CyclicGroup::weierstrass(*find_toy_curve(p));
  }
}

const char* kBackendLabel[] = {"zp", "mult", "ec"};

void BM_GroupAdd(benchmark::State& state) {
  const CyclicGroup g = make_group(static_cast<int>(state.range(0)), 15541);
  GroupPoint a = g.power_of_generator(1234);
  const GroupPoint b = g.power_of_generator(4321);
  for (auto _ : state) {
    a = g.add(a, b);
    benchmark::DoNotOptimize(a);
  }
  state.SetLabel(kBackendLabel[state.range(0)]);
}
BENCHMARK(BM_GroupAdd)->DenseRange(0, 2);

void BM_ScalarMul(benchmark::State& state) {
  const CyclicGroup g = make_group(static_cast<int>(state.range(0)), 15541);
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.power_of_generator(random_below(g.order(), rng)));
  }
  state.SetLabel(kBackendLabel[state.range(0)]);
}
BENCHMARK(BM_ScalarMul)->DenseRange(0, 2);

void BM_OracleDh(benchmark::State& state) {
  const CyclicGroup g = make_group(static_cast<int>(state.range(0)), 15541);
  DhOracle oracle(g);
  std::mt19937_64 rng(2);
  const GroupPoint b = g.power_of_generator(777);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle.dh(g.power_of_generator(random_below(g.order(), rng)), b));
  }
  state.SetLabel(kBackendLabel[state.range(0)]);
}
BENCHMARK(BM_OracleDh)->DenseRange(0, 2);

// Args: backend, d. 15540 = 2^2 * 3 * 5 * 7 * 37.
void BM_ReduceDlog(benchmark::State& state) {
  const BigNat p = 15541;
  const CyclicGroup g = make_group(static_cast<int>(state.range(0)), p);
  const BigNat d = static_cast<unsigned long>(state.range(1));
  const Factorization pm1 = factorize(p - 1);
  DhOracle oracle(g);
  std::mt19937_64 rng(3);
  std::uint64_t ops = 0, calls = 0;
  for (auto _ : state) {
    const BigNat x = random_below(p - 1, rng) + 1;
    const ReductionTranscript tr = reduce_dlog(g, oracle, g.power_of_generator(x), d, pm1, 1);
    ops += tr.ledger.group_ops;
    calls += tr.ledger.oracle_calls;
  }
  state.counters["group_ops"] = benchmark::Counter(static_cast<double>(ops), benchmark::Counter::kAvgIterations);
  state.counters["oracle_calls"] = benchmark::Counter(static_cast<double>(calls), benchmark::Counter::kAvgIterations);
  state.SetLabel(kBackendLabel[state.range(0)]);
}
BENCHMARK(BM_ReduceDlog)->ArgsProduct({{0, 1, 2}, {4, 37, 105, 3885}});

void BM_TableRows(benchmark::State& state) {
  const auto db = embedded_curve_database();
  for (auto _ : state) benchmark::DoNotOptimize(table_rows(db));
}
BENCHMARK(BM_TableRows)->Unit(benchmark::kMillisecond);

void BM_FactorizeSecp112r1(benchmark::State& state) {
  const BigNat p = parse_bignat("4451685225093714776491891542548933");
  for (auto _ : state) benchmark::DoNotOptimize(factorize(p - 1));
}
BENCHMARK(BM_FactorizeSecp112r1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
