#include <complex>
#include <vector>

#include <benchmark/benchmark.h>

#include <magnon/bessel.hpp>
#include <magnon/chain.hpp>
#include <magnon/channels.hpp>
#include <magnon/echo.hpp>
#include <magnon/harper.hpp>
#include <magnon/oracle.hpp>
#include <magnon/propagator.hpp>
#include <magnon/state.hpp>

namespace {

using cplx = std::complex<double>;
const cplx kHalf(0.7071067811865476, 0.0);

void bessel_small_argument(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    x += 1e-3;
    benchmark::DoNotOptimize(magnon::bessel_j(3, 1.0 + x));
  }
}
BENCHMARK(bessel_small_argument);

void bessel_recurrence_regime(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    x += 1e-3;
    benchmark::DoNotOptimize(magnon::bessel_j(3, 40.0 + x));
  }
}
BENCHMARK(bessel_recurrence_regime);

void ring_green_single(benchmark::State& state) {
  const auto chain = magnon::ChainSpec::finite(static_cast<int>(state.range(0)), 1.0);
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-3;
    benchmark::DoNotOptimize(magnon::green_finite(chain, 7, 1, 1.0 + t));
  }
}
BENCHMARK(ring_green_single)->Arg(100)->Arg(1000);

void ring_propagator_table(benchmark::State& state) {
  const auto chain = magnon::ChainSpec::finite(static_cast<int>(state.range(0)), 1.0);
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-3;
    benchmark::DoNotOptimize(magnon::propagator_matrix(chain, 1.0 + t).amplitudes.sum());
  }
}
BENCHMARK(ring_propagator_table)->Arg(100)->Arg(1000);

void kicked_step_product(benchmark::State& state) {
  magnon::HarperParams params;
  params.size = static_cast<int>(state.range(0));
  params.tau = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(magnon::harper_green(params, 10).amplitudes.sum());
  }
}
BENCHMARK(kicked_step_product)->Arg(50)->Arg(200);

void kicked_column_walk(benchmark::State& state) {
  magnon::HarperParams params;
  params.size = 1000;
  params.tau = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        magnon::harper_column(params, static_cast<int>(state.range(0))).sum());
  }
}
BENCHMARK(kicked_column_walk)->Arg(10)->Arg(50);

void single_event_echo(benchmark::State& state) {
  const auto chain = magnon::ChainSpec::finite(1000, 1.0);
  const auto initial = magnon::InitialState::unentangled(kHalf, kHalf);
  magnon::QdpEvent event;
  event.site = 3;
  event.process = magnon::project_z();
  double t0 = 0.0;
  for (auto _ : state) {
    t0 += 1e-3;
    event.epoch = 1.0 + t0;
    benchmark::DoNotOptimize(magnon::echo_incoherent(initial, chain, event));
  }
}
BENCHMARK(single_event_echo);

void sequence_echo_exact(benchmark::State& state) {
  const auto chain = magnon::ChainSpec::finite(static_cast<int>(state.range(0)), 1.0);
  const auto initial = magnon::InitialState::unentangled(kHalf, kHalf);
  magnon::QdpSequence sequence;
  sequence.spacing = 0.7;
  sequence.sites = {3, 1, 6, 9, 4, 7, 2, 8};
  sequence.process = magnon::project_z();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        magnon::echo_multi_exact_z(initial, chain, sequence).samples.back().second);
  }
}
BENCHMARK(sequence_echo_exact)->Arg(10)->Arg(100);

void dense_reference_echo(benchmark::State& state) {
  const magnon::OracleSession session(
      magnon::ChainSpec::finite(static_cast<int>(state.range(0)), 1.0));
  const auto initial = magnon::InitialState::unentangled(kHalf, kHalf);
  magnon::QdpEvent event;
  event.site = 1;
  event.epoch = 1.5;
  event.process = magnon::project_z();
  for (auto _ : state) {
    benchmark::DoNotOptimize(session.echo(initial, {event}, 1.5));
  }
}
BENCHMARK(dense_reference_echo)->Arg(8)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
