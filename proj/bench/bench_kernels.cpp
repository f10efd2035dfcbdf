// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "catsim/classical.hpp"
#include "catsim/fock.hpp"
#include "catsim/kernels.hpp"
#include "catsim/presets.hpp"
#include "catsim/protocol.hpp"

using namespace catsim;

namespace {

std::vector<cplx> filled(std::size_t n, double seed) {
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = cplx(std::sin(seed * (i + 1)), std::cos(0.5 * seed * (i + 3)));
  return v;
}

template <bool Parallel>
void BM_matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = filled(n * n, 0.37);
  const auto b = filled(n * n, 0.91);
  std::vector<cplx> c(n * n);
  for (auto _ : state) {
    if constexpr (Parallel) kernels::matmul(a.data(), b.data(), c.data(), n);
    else kernels::serial::matmul(a.data(), b.data(), c.data(), n);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n * n));
}

template <bool Parallel>
void BM_matvec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = filled(n * n, 0.37);
  const auto x = filled(n, 0.91);
  std::vector<cplx> y(n);
  for (auto _ : state) {
    if constexpr (Parallel) kernels::matvec(a.data(), x.data(), y.data(), n);
    else kernels::serial::matvec(a.data(), x.data(), y.data(), n);
    benchmark::DoNotOptimize(y.data());
  }
}

template <bool Parallel>
void BM_thermal(benchmark::State& state) {
  const auto s = presets::discussion();
  protocol::ProtocolOptions opt;
  opt.force = true;
  const protocol::ThermalSpec spec{10.0, 42, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) {
    auto r = Parallel ? protocol::run_thermal(s, spec, opt)
                      : protocol::run_thermal_serial(s, spec, opt);
    benchmark::DoNotOptimize(r.p_down_mean);
  }
}

template <bool Parallel>
void BM_transient(benchmark::State& state) {
  classical::TransientSpec spec;
  spec.mass = 1e-15;
  spec.omega = 5e-6;
  spec.dx = 1e-14;
  const auto points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto r = Parallel ? classical::transient_curve(spec, spec.period(), points)
                      : classical::transient_curve_serial(spec, spec.period(), points);
    benchmark::DoNotOptimize(r.data());
  }
}

}  // namespace

BENCHMARK(BM_matmul<true>)->Arg(64)->Arg(128)->Arg(256)->Name("matmul/parallel");
BENCHMARK(BM_matmul<false>)->Arg(64)->Arg(128)->Arg(256)->Name("matmul/serial");
BENCHMARK(BM_matvec<true>)->Arg(128)->Arg(256)->Name("matvec/parallel");
BENCHMARK(BM_matvec<false>)->Arg(128)->Arg(256)->Name("matvec/serial");
BENCHMARK(BM_thermal<true>)->Arg(200)->Name("thermal/parallel");
BENCHMARK(BM_thermal<false>)->Arg(200)->Name("thermal/serial");
BENCHMARK(BM_transient<true>)->Arg(20001)->Name("transient/parallel");
BENCHMARK(BM_transient<false>)->Arg(20001)->Name("transient/serial");

BENCHMARK_MAIN();
