#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "feascirc/experiment.hpp"
#include "feascirc/feasible_sim.hpp"
#include "feascirc/full_sim.hpp"
#include "feascirc/generating_sequence.hpp"
#include "feascirc/qaoa.hpp"

namespace fc = feascirc;

static void BM_InvolutionAction(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = fc::transposition(n, 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(fc::involution_action(h, fc::ActionSide::Right));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(fc::factorial(n)));
}
BENCHMARK(BM_InvolutionAction)->DenseRange(6, 9)->Unit(benchmark::kMicrosecond);

static void BM_ApplyInvolutionExp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto action = fc::involution_action(fc::transposition(n, 2, 3), fc::ActionSide::Right);
  auto psi = fc::uniform_feasible_state(n);
  for (auto _ : state) {
    fc::apply_involution_exp(psi, action, 0.3);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(psi.size()));
}
BENCHMARK(BM_ApplyInvolutionExp)->DenseRange(6, 10)->Unit(benchmark::kMicrosecond);

// One objective evaluation of the 9-city reduced experiment (effective n = 8).
static void BM_Energy(benchmark::State& state) {
  const auto method = static_cast<fc::Method>(state.range(0));
  const fc::Ansatz ansatz(fc::random_instance(9, 7, 1.0, 10.0), method, true);
  std::vector<double> x(ansatz.parameter_count(), 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(ansatz.energy(x));
  state.SetLabel(std::string(fc::to_string(method)));
}
BENCHMARK(BM_Energy)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_FullSwapExp(benchmark::State& state) {
  const fc::EncodingSpec spec{4, fc::EncodingKind::OneHot, false};
  const auto map = fc::swap_index_map(fc::transposition(4, 1, 2), spec);
  auto sv = fc::StateVector::random(spec.bit_count(), 1);
  for (auto _ : state) {
    fc::apply_swap_involution_exp(sv, map, 0.3);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_FullSwapExp)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
