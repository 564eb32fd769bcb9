#include <benchmark/benchmark.h>

#include "nlpd/generators.hpp"
#include "nlpd/integer_greedy.hpp"
#include "nlpd/oracle.hpp"
#include "nlpd/waterfill.hpp"

using namespace nlpd;

// One water-filling split against pre-warmed loads, by machine count.
static void BM_WaterfillAllocate(benchmark::State& state) {
  const int machines = static_cast<int>(state.range(0));
  gen::RandomOngapParams p;
  p.jobs = 1;
  p.machines = machines;
  p.density = 1.0;
  Instance inst = gen::random_ongap(p, 42);
  std::vector<double> loads(machines);
  rng::SplitMix64 g(7);
  for (double& l : loads) l = g.uniform() * 4.0;
  const double delta = Parameters{}.resolve_delta(inst.alpha);
  for (auto _ : state) {
    WaterfillResult r = waterfill_allocate(inst.jobs[0], loads, inst.alpha, delta);
    benchmark::DoNotOptimize(r.theta);
  }
}
BENCHMARK(BM_WaterfillAllocate)->Arg(4)->Arg(16)->Arg(64)->Arg(256);

// Full online fractional run + certificate, by job count.
static void BM_OnlineFractional(benchmark::State& state) {
  gen::RandomOngapParams p;
  p.jobs = static_cast<int>(state.range(0));
  p.machines = 10;
  Instance inst = gen::random_ongap(p, 42);
  for (auto _ : state) {
    FractionalRun run = run_online_fractional(inst);
    CertificateReport cert = certify_run(run, inst);
    benchmark::DoNotOptimize(cert.ratio);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OnlineFractional)->Arg(50)->Arg(200)->Arg(800);

// Integral greedy on the augmented instance, by job count.
static void BM_IntegerGreedy(benchmark::State& state) {
  gen::RandomOngapParams p;
  p.jobs = static_cast<int>(state.range(0));
  p.machines = 10;
  Instance aug = augmented_instance(gen::random_ongap(p, 42));
  for (auto _ : state) {
    IntegerRun run = greedy_assign_integer(aug);
    benchmark::DoNotOptimize(run.lambda.back());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IntegerGreedy)->Arg(50)->Arg(200)->Arg(800);

// Offline block-descent oracle, by job count (tolerance 1e-8).
static void BM_FractionalOracle(benchmark::State& state) {
  gen::RandomOngapParams p;
  p.jobs = static_cast<int>(state.range(0));
  p.machines = 8;
  Instance inst = gen::random_ongap(p, 42);
  for (auto _ : state) {
    oracle::FractionalOpt opt = oracle::fractional_opt(inst, 1e-8);
    benchmark::DoNotOptimize(opt.objective);
  }
}
BENCHMARK(BM_FractionalOracle)->Arg(10)->Arg(30)->Arg(90);
