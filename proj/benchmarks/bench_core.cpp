#include <benchmark/benchmark.h>

#include "ddm/dynamics.hpp"
#include "ddm/gates.hpp"
#include "ddm/linalg.hpp"
#include "ddm/noise.hpp"

using namespace ddm;

namespace {

constexpr double two_pi = 2.0 * constants::pi;

OperatingPoint bench_point() {
  OperatingPoint op;
  op.g = two_pi * 0.125;
  op.omega = two_pi * 5.0;
  op.omega0 = two_pi * 10.0;
  op.Omega = two_pi * 10.0;
  op.delta_2q = two_pi * 1.0;
  op.n_max = 5;
  op.T = two_pi * 2.5;
  return op;
}

void BM_PropagatorBuild(benchmark::State& state) {
  const int n_max = int(state.range(0));
  Operator h = build_jc(two_pi * 0.125, n_max);
  for (auto _ : state) {
    Propagator p(h);
    benchmark::DoNotOptimize(p.V.data());
  }
  state.SetComplexityN(h.dim());
}
BENCHMARK(BM_PropagatorBuild)->Arg(3)->Arg(7)->Arg(15)->Arg(31)->Complexity();

void BM_PropagatorApply(benchmark::State& state) {
  const int n_max = int(state.range(0));
  Operator h = build_jc(two_pi * 0.125, n_max);
  Propagator p(h);
  Vec psi = Vec::Zero(h.dim());
  psi(0) = 1;
  double t = 0;
  for (auto _ : state) {
    t += 0.1;
    Vec out = p.apply(psi, t);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_PropagatorApply)->Arg(3)->Arg(7)->Arg(15)->Arg(31);

void BM_MatrixExponential(benchmark::State& state) {
  const int n_max = int(state.range(0));
  Operator h = build_jc(two_pi * 0.125, n_max);
  for (auto _ : state) {
    Operator u = matrix_exponential(h, 1.7);
    benchmark::DoNotOptimize(u.mat.data());
  }
}
BENCHMARK(BM_MatrixExponential)->Arg(3)->Arg(7)->Arg(15);

void BM_LindbladIdleDecay(benchmark::State& state) {
  HilbertSpace sp{{2, int(state.range(0)) + 1}};
  std::vector<LindbladChannel> ch = {photon_loss_channel(sp, 0.05)};
  Vec v = Vec::Zero(sp.dim());
  v(1) = 1;
  State rho0 = State::mixed(sp, v * v.adjoint());
  std::vector<ScheduleStep> steps = {{0.0 * identity(sp), 5.0}};
  for (auto _ : state) {
    SimResult r = evolve_lindblad(steps, ch, rho0, {5.0});
    benchmark::DoNotOptimize(r.states.back().mat.data());
  }
}
BENCHMARK(BM_LindbladIdleDecay)->Arg(3)->Arg(7);

void BM_NoisyGateFidelity(benchmark::State& state) {
  PulseSchedule sched = [] {
    OperatingPoint op = bench_point();
    op.T = 0.5 * (op.omega0 - op.delta_2q);
    return synthesize_sqrt_iswap(op);
  }();
  NoiseModel m;
  m.sigma = 0.0157;
  DeviceParams p;
  const int n_traj = int(state.range(0));
  uint64_t seed = 0;
  for (auto _ : state) {
    FidelityReport r = noisy_gate_fidelity(sched, m, n_traj, ++seed, p);
    benchmark::DoNotOptimize(r.mean_fidelity);
  }
  state.SetItemsProcessed(state.iterations() * n_traj);
}
BENCHMARK(BM_NoisyGateFidelity)->Arg(100)->Arg(1000);

void BM_PartialTrace(benchmark::State& state) {
  HilbertSpace sp{{2, 2, int(state.range(0)) + 1}};
  Vec v = Vec::Zero(sp.dim());
  v(0) = v(sp.dim() - 1) = 1.0 / std::sqrt(2.0);
  State psi = State::pure(sp, v);
  for (auto _ : state) {
    State red = partial_trace(psi, {0, 1});
    benchmark::DoNotOptimize(red.mat.data());
  }
}
BENCHMARK(BM_PartialTrace)->Arg(3)->Arg(7)->Arg(15);

}  // namespace

BENCHMARK_MAIN();
