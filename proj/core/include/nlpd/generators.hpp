#pragma once

#include <cstdint>

#include "nlpd/routing.hpp"
#include "nlpd/speed_scaling.hpp"

namespace nlpd::gen {

struct RandomOngapParams {
  int jobs = 10;
  int machines = 4;
  double alpha = 2.0;
  double density = 0.7;   // probability each (job, machine) pair is allowed
  double load_min = 0.1;  // loads drawn log-uniformly in [load_min, load_max]
  double load_max = 10.0;
  double cost_max = 5.0;  // costs uniform in [0, cost_max]
  double demand = 1.0;
  bool zero_costs = false;  // pure load balancing
};

// Deterministic for a given (params, seed); every job keeps at least one option.
Instance random_ongap(const RandomOngapParams& p, std::uint64_t seed);

// One job, m identical unit-load zero-cost machines: the fractional optimum is
// m^(1-alpha) while any integral assignment costs 1 — the canonical gap witness.
Instance split_gap(int machines, double alpha);

struct RandomSsParams {
  int jobs = 8;
  int horizon = 16;
  double alpha = 2.0;
  double beta = 1.0;
  double work_min = 0.5;
  double work_max = 2.0;
  // When set, deadlines are reassigned so arrival order matches deadline order;
  // the greedy/replanning equivalence only holds on such inputs.
  bool agreeable = false;
};

// Random deadline-kernel workload, jobs sorted by release slot.
ss::SsInstance random_speed_scaling(const RandomSsParams& p, std::uint64_t seed);

struct RandomGraphParams {
  int nodes = 10;
  double extra_edge_factor = 1.0;  // extra edges = factor * nodes, on top of a spanning tree
  int requests = 4;
  double alpha = 2.0;
  double flow_min = 0.5;
  double flow_max = 2.0;
};

// Connected multigraph: a random spanning tree plus random extra edges.
net::RoutingInstance random_graph(const RandomGraphParams& p, std::uint64_t seed);

}  // namespace nlpd::gen
