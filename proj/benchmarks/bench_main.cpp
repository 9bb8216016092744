// Micro-benchmarks for the solver library: per-pair closed-form solves, the
// grid oracle at reduced resolution, cost-matrix fill, Hungarian matching,
// and channel sampling.

#include <benchmark/benchmark.h>

#include <vector>

#include "cnoma/assignment.hpp"
#include "cnoma/channel.hpp"
#include "cnoma/oracle.hpp"
#include "cnoma/power_control.hpp"

namespace {

using namespace cnoma;

const QosSpec kQos = QosSpec::from_rate(1.0);
const PairChannels kPairHd(4.0, 0.5, 1.2, 0.0);
const PairChannels kPairFd(5.0, 0.4, 2.0, 0.3);

void BM_HdOptimal(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(hd_optimal(kPairHd, 8.0, 5.0, kQos));
  }
}
BENCHMARK(BM_HdOptimal);

void BM_FdOptimal(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(fd_optimal(kPairFd, 12.0, 6.0, kQos));
  }
}
BENCHMARK(BM_FdOptimal);

void BM_NomaOptimal(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(noma_optimal(kPairFd, 12.0, kQos));
  }
}
BENCHMARK(BM_NomaOptimal);

void BM_ModeSelect(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mode_select(kPairFd, 12.0, 6.0, kQos));
  }
}
BENCHMARK(BM_ModeSelect);

void BM_GridOracleSmall(benchmark::State& state) {
  GridSpec spec;
  spec.alpha_points = 201;
  spec.pd_points = 201;
  spec.refine_rounds = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        grid_optimal(kPairFd, 12.0, 6.0, kQos, DuplexMode::FD, spec));
  }
}
BENCHMARK(BM_GridOracleSmall);

CostMatrix random_cost_matrix(int k) {
  RandomStream rs(99, 7, streams::kGeneric);
  CostMatrix cost(k);
  std::uint64_t idx = 0;
  for (int m = 0; m < k; ++m)
    for (int n = 0; n < k; ++n) cost.at(m, n) = -8.0 * rs.u01(idx++);
  return cost;
}

void BM_Hungarian(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const CostMatrix cost = random_cost_matrix(k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hungarian(cost));
  }
  state.SetComplexityN(k);
}
BENCHMARK(BM_Hungarian)->Arg(16)->Arg(64)->Arg(128)->Arg(256)->Complexity();

void BM_CostMatrixFill(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const NetworkRealization net = sample_network(ChannelStats{}, k, 4242, 0);
  SystemConfig cfg;
  cfg.p_bs = 1000.0;
  cfg.p_d_max = 1000.0;
  cfg.qos = kQos;
  cfg.mode = SolveMode::ModeSelect;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_cost_matrix(net, cfg, 1));
  }
  state.SetComplexityN(k);
}
BENCHMARK(BM_CostMatrixFill)->Arg(8)->Arg(16)->Arg(32)->Arg(64)->Complexity();

void BM_SampleNetwork(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_network(ChannelStats{}, k, 7, trial++));
  }
}
BENCHMARK(BM_SampleNetwork)->Arg(16)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
