#include "nlpd/generators.hpp"

#include <algorithm>
#include <cmath>

#include "nlpd/rounding.hpp"  // rng::SplitMix64

namespace nlpd::gen {

namespace {

double uniform(rng::SplitMix64& g, double lo, double hi) {
  return lo + (hi - lo) * g.uniform();
}

double log_uniform(rng::SplitMix64& g, double lo, double hi) {
  return std::exp(uniform(g, std::log(lo), std::log(hi)));
}

// uniform integer in [0, n); deterministic across platforms
int uniform_int(rng::SplitMix64& g, int n) {
  return static_cast<int>(g.next() % static_cast<std::uint64_t>(n));
}

}  // namespace

Instance random_ongap(const RandomOngapParams& p, std::uint64_t seed) {
  if (p.jobs <= 0 || p.machines <= 0)
    throw std::invalid_argument("random_ongap: need at least one job and one machine");
  rng::SplitMix64 g(rng::derive(seed, 0x6f6e676170ull));

  Instance inst;
  inst.alpha = p.alpha;
  inst.machines = p.machines;
  inst.jobs.resize(p.jobs);
  for (JobSpec& job : inst.jobs) {
    job.demand = p.demand;
    for (int m = 0; m < p.machines; ++m)
      if (g.uniform() < p.density)
        job.options.push_back({m, log_uniform(g, p.load_min, p.load_max),
                               p.zero_costs ? 0.0 : uniform(g, 0.0, p.cost_max)});
    if (job.options.empty()) {  // keep every job feasible
      int m = uniform_int(g, p.machines);
      job.options.push_back({m, log_uniform(g, p.load_min, p.load_max),
                             p.zero_costs ? 0.0 : uniform(g, 0.0, p.cost_max)});
    }
  }
  return inst;
}

Instance split_gap(int machines, double alpha) {
  if (machines <= 0) throw std::invalid_argument("split_gap: need at least one machine");
  Instance inst;
  inst.alpha = alpha;
  inst.machines = machines;
  JobSpec job;
  job.demand = 1.0;
  for (int m = 0; m < machines; ++m) job.options.push_back({m, 1.0, 0.0});
  inst.jobs.push_back(std::move(job));
  return inst;
}

ss::SsInstance random_speed_scaling(const RandomSsParams& p, std::uint64_t seed) {
  if (p.jobs <= 0 || p.horizon <= 1)
    throw std::invalid_argument("random_speed_scaling: need jobs and a horizon >= 2");
  rng::SplitMix64 g(rng::derive(seed, 0x7373ull));

  ss::SsInstance ssi;
  ssi.alpha = p.alpha;
  ssi.horizon = p.horizon;
  ssi.beta = p.beta;
  ssi.kernel = ss::Kernel::Deadline;
  ssi.jobs.resize(p.jobs);
  for (ss::SsJob& job : ssi.jobs) {
    job.release = uniform_int(g, p.horizon - 1);
    job.deadline = job.release + 1 + uniform_int(g, p.horizon - job.release - 1 + 1);
    job.work = uniform(g, p.work_min, p.work_max);
  }
  std::stable_sort(ssi.jobs.begin(), ssi.jobs.end(),
                   [](const ss::SsJob& a, const ss::SsJob& b) { return a.release < b.release; });
  if (p.agreeable) {
    // keep the window lengths but hand the deadlines out in arrival order
    std::vector<int> deadlines;
    for (const ss::SsJob& j : ssi.jobs) deadlines.push_back(j.deadline);
    std::sort(deadlines.begin(), deadlines.end());
    for (std::size_t i = 0; i < ssi.jobs.size(); ++i)
      ssi.jobs[i].deadline = std::max(deadlines[i], ssi.jobs[i].release + 1);
  }
  return ssi;
}

net::RoutingInstance random_graph(const RandomGraphParams& p, std::uint64_t seed) {
  if (p.nodes < 2) throw std::invalid_argument("random_graph: need at least two nodes");
  rng::SplitMix64 g(rng::derive(seed, 0x677261706866ull));

  net::RoutingInstance inst;
  inst.alpha = p.alpha;
  inst.nodes = p.nodes;
  for (int v = 1; v < p.nodes; ++v)  // random spanning tree keeps everything connected
    inst.edges.push_back({uniform_int(g, v), v});
  int extra = static_cast<int>(std::llround(p.extra_edge_factor * p.nodes));
  for (int i = 0; i < extra; ++i) {
    int u = uniform_int(g, p.nodes);
    int v = uniform_int(g, p.nodes);
    if (u == v) continue;  // skip self-loops; parallel edges are fine
    inst.edges.push_back({u, v});
  }
  for (int r = 0; r < p.requests; ++r) {
    int s = uniform_int(g, p.nodes);
    int t = uniform_int(g, p.nodes);
    while (t == s) t = uniform_int(g, p.nodes);
    inst.requests.push_back({s, t, uniform(g, p.flow_min, p.flow_max)});
  }
  return inst;
}

}  // namespace nlpd::gen
