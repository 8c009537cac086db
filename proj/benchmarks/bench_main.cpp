#include <benchmark/benchmark.h>

#include "ecscan/arith.hpp"
#include "ecscan/curve.hpp"
#include "ecscan/search.hpp"

using namespace ecscan;

namespace {

const Curve& big_curve() {
  static const Curve E = Curve::parse("[0,0,1,-199,1092]");
  return E;
}

// A row of the T=100 box far from the origin, where B has thousands of bits.
struct Row {
  RationalPoint prev, cur, step;
};

Row far_row(std::int64_t m) {
  const Curve& E = big_curve();
  RationalPoint P = RationalPoint::parse("-13,38"), Q = RationalPoint::parse("-6,45");
  Row r;
  r.step = Q;
  r.prev = combination(E, {P, Q}, {m, m - 1});
  r.cur = add(E, r.prev, Q);
  return r;
}

void BM_add(benchmark::State& state) {
  Row r = far_row(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(add(big_curve(), r.cur, r.step));
}
BENCHMARK(BM_add)->Arg(20)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_add_advance(benchmark::State& state) {
  Row r = far_row(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(add_advance(big_curve(), r.cur, r.step, r.prev));
}
BENCHMARK(BM_add_advance)->Arg(20)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_probable_prime(benchmark::State& state) {
  Integer n;
  mpz_ui_pow_ui(n.get_mpz_t(), 2, static_cast<unsigned long>(state.range(0)));
  mpz_nextprime(n.get_mpz_t(), n.get_mpz_t());
  for (auto _ : state) benchmark::DoNotOptimize(arith::is_probable_prime(n));
}
BENCHMARK(BM_probable_prime)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_scan_denominators(benchmark::State& state) {
  search::ScanConfig c{big_curve(), {RationalPoint::parse("-13,38"), RationalPoint::parse("-6,45")},
                       static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(search::scan_denominators(c));
}
BENCHMARK(BM_scan_denominators)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
