#include <benchmark/benchmark.h>

#include "nlpd/generators.hpp"
#include "nlpd/oracle.hpp"
#include "nlpd/routing.hpp"

using namespace nlpd;

namespace {

net::RoutingInstance make_graph(int nodes, int requests) {
  gen::RandomGraphParams p;
  p.nodes = nodes;
  p.requests = requests;
  p.extra_edge_factor = 2.0;
  return gen::random_graph(p, 42);
}

}  // namespace

// Online chunked routing; the chunk fraction eps drives the work.
static void BM_OnlineRouting(benchmark::State& state) {
  net::RoutingInstance inst = make_graph(30, 10);
  const double eps = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    net::RoutingRun run = net::run_online_routing(inst, eps);
    benchmark::DoNotOptimize(run.on);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 10);  // chunks routed
}
BENCHMARK(BM_OnlineRouting)->Arg(10)->Arg(100)->Arg(1000);

// Routing scaled by graph size at fixed eps = 1e-2.
static void BM_OnlineRoutingNodes(benchmark::State& state) {
  net::RoutingInstance inst = make_graph(static_cast<int>(state.range(0)), 8);
  for (auto _ : state) {
    net::RoutingRun run = net::run_online_routing(inst, 1e-2);
    benchmark::DoNotOptimize(run.on);
  }
}
BENCHMARK(BM_OnlineRoutingNodes)->Arg(10)->Arg(40)->Arg(160);

// Certificate evaluation alone (a single pass over requests and edges).
static void BM_RoutingCertificate(benchmark::State& state) {
  net::RoutingInstance inst = make_graph(30, 10);
  net::RoutingRun run = net::run_online_routing(inst, 1e-2);
  for (auto _ : state) {
    net::RoutingCertificate cert = net::routing_dual_certificate(run, inst, 1e-2);
    benchmark::DoNotOptimize(cert.cert);
  }
}
BENCHMARK(BM_RoutingCertificate);

// Frank-Wolfe offline optimum at a modest tolerance.
static void BM_RoutingOracle(benchmark::State& state) {
  net::RoutingInstance inst = make_graph(static_cast<int>(state.range(0)), 8);
  for (auto _ : state) {
    oracle::RoutingOpt opt = oracle::fractional_opt_routing(inst, 1e-6);
    benchmark::DoNotOptimize(opt.objective);
  }
}
BENCHMARK(BM_RoutingOracle)->Arg(10)->Arg(20);
