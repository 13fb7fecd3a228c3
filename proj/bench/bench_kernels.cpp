// OpenMP kernels against their serial references.

#include "operlab/eichler_shimura.hpp"
#include "operlab/fuchsian.hpp"
#include "operlab/ode_monodromy.hpp"
#include "operlab/pairing.hpp"
#include "operlab/surface_group.hpp"

#include <benchmark/benchmark.h>
#include <spdlog/spdlog.h>

using namespace operlab;

namespace {

const fuchsian::Fixture& gamma0_4() {
  static const auto fx = fuchsian::fixture_group("gamma0_4");
  return fx;
}

const fuchsian::Fixture& genus2() {
  static const auto fx = fuchsian::fixture_group("genus2_closed");
  return fx;
}

void domain_quadrature(benchmark::State& state, bool parallel) {
  fuchsian::QuadratureOptions q;
  q.min_level = static_cast<int>(state.range(0));
  q.max_level = q.min_level + 1;
  q.tol = 1.0;  // fixed work: stop at the first comparison
  q.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(fuchsian::domain_area(genus2().domain, q));
}

void period_cocycle(benchmark::State& state, bool parallel) {
  const auto f = fuchsian::fixture_forms(gamma0_4(), 6).front();
  es::ESConfig cfg;
  cfg.tol = 1e-13;
  for (auto _ : state) {
    if (parallel)
      benchmark::DoNotOptimize(es::es_cocycle(f, gamma0_4(), 2, cfg));
    else
      benchmark::DoNotOptimize(es::es_cocycle_serial(f, gamma0_4(), 2, cfg));
  }
}

struct LoopSetup {
  ode::MeromorphicSystem sys;
  std::vector<ode::PathSpec> loops;
};

LoopSetup loop_setup(int poles) {
  LoopSetup s;
  for (int p = 0; p < poles; ++p) {
    CMat r(2, 2);
    r << 0.1 * (p + 1), 0.2, -0.3, -0.1 * (p + 1);
    s.sys.poles.push_back(cplx(p - 0.5 * (poles - 1), 0.0));
    s.sys.residues.push_back(r);
  }
  for (const auto& p : s.sys.poles) s.loops.push_back(ode::PathSpec::lasso(cplx(0.0, -2.0), p, 0.3));
  return s;
}

void monodromy(benchmark::State& state, bool parallel) {
  const auto s = loop_setup(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    if (parallel)
      benchmark::DoNotOptimize(ode::monodromy_representation(s.sys, s.loops));
    else
      benchmark::DoNotOptimize(ode::monodromy_representation_serial(s.sys, s.loops));
  }
}

void gram(benchmark::State& state, bool parallel) {
  const auto mod = pairing::sym_pairing_module<cplx>(genus2().rep, static_cast<int>(state.range(0)));
  const auto coh = surface::h1p_basis(mod.act);
  for (auto _ : state) {
    if (parallel)
      benchmark::DoNotOptimize(pairing::goldman_gram(mod, coh.h1p));
    else
      benchmark::DoNotOptimize(pairing::goldman_gram_serial(mod, coh.h1p));
  }
}

}  // namespace

BENCHMARK_CAPTURE(domain_quadrature, serial, false)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(domain_quadrature, openmp, true)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(period_cocycle, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(period_cocycle, openmp, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(monodromy, serial, false)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(monodromy, openmp, true)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(gram, serial, false)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(gram, openmp, true)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::err);
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
