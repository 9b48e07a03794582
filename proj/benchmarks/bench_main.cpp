#include <benchmark/benchmark.h>

#include "ldint/ldint.hpp"

using namespace ldint;

static void BM_LdQuadrature(benchmark::State& st) {
  const auto g = gaussian_function();
  const unsigned n = static_cast<unsigned>(st.range(0));
  const auto rule = QuadratureRule::lanczos_dyche(n);
  const auto j1 = g.jet(-0.5, n - 1), j2 = g.jet(0.5, n - 1);
  for (auto _ : st) benchmark::DoNotOptimize(integrate(rule, j1, j2, 1.0));
}
BENCHMARK(BM_LdQuadrature)->Arg(2)->Arg(8)->Arg(16);

static void BM_Step(benchmark::State& st, HamiltonianSystem sys, Method m) {
  StepperConfig cfg;
  cfg.method = m;
  cfg.dt = 0.1;
  auto s = PhaseState::scalar(1.0, 0.0);
  for (auto _ : st) {
    s = step(sys, s, cfg);
    benchmark::DoNotOptimize(s.q.data());
  }
}
BENCHMARK_CAPTURE(BM_Step, sho_ld2, make_sho(), Method::LD2);
BENCHMARK_CAPTURE(BM_Step, sho_rk4, make_sho(), Method::RK4);
BENCHMARK_CAPTURE(BM_Step, pendulum_ld2, make_pendulum(), Method::LD2);
BENCHMARK_CAPTURE(BM_Step, pendulum_ld4, make_pendulum(), Method::LD4);

static void BM_PropagatorApply(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto op = mol_advection_operator(n, 1.0 / n);
  const auto storage = st.range(1) ? PropagatorStorage::Dense : PropagatorStorage::Factorized;
  const auto prop = build_propagator(op.dense(), 4.0 / n, 2, storage);
  Vector u = Vector::LinSpaced(n, 0.0, 1.0);
  for (auto _ : st) {
    u = prop.apply(u);
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(BM_PropagatorApply)->Args({64, 0})->Args({64, 1})->Args({256, 0})->Args({256, 1});

static void BM_StabilityScan(benchmark::State& st) {
  const IncrementFunction f(IncrementKind::LanczosDyche, 4);
  for (auto _ : st) benchmark::DoNotOptimize(scan_region(f, {-5, 5}, {-5, 5}, 201, 201, 1).values.data());
}
BENCHMARK(BM_StabilityScan);
BENCHMARK_MAIN();
