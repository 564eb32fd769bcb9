#pragma once

#include <utility>

#include "nlpd/model.hpp"

namespace nlpd::net {

struct Edge {
  int u = 0;
  int v = 0;
};

struct Request {
  int s = 0;
  int t = 0;
  double flow = 1.0;
};

// Undirected multigraph (parallel edges allowed) with flow requests. Objective:
// sum_e (total flow through e)^alpha.
struct RoutingInstance {
  double alpha = 2.0;
  int nodes = 0;
  std::vector<Edge> edges;
  std::vector<Request> requests;
};

// Flags bad ids, nonpositive flows, s == t, self-loops, alpha <= 1, and pairs
// not connected in the graph.
ValidationReport validate_routing(const RoutingInstance& inst);

// Exact cost of pushing `eps` more flow through an edge carrying `load`:
// (load + eps)^alpha - load^alpha. Using the exact difference (not the
// derivative) keeps shortest paths meaningful at zero load.
double edge_increment_weight(double load, double eps, double alpha);

enum class LambdaRule {
  MarginalSum,  // delta * sum over the final path of alpha * load^(alpha-1)
  PowerOfSum,   // delta * alpha * (sum over the final path of loads)^(alpha-1)
};

struct RouteEvent {
  int request = 0;
  double lambda = 0.0;
  // distinct edge-id paths used and the flow sent along each
  std::vector<std::pair<std::vector<int>, double>> paths;
};

struct RoutingRun {
  std::vector<double> edge_load;
  std::vector<double> lambda;  // per request
  std::vector<RouteEvent> log;
  double on = 0.0;     // sum_e load^alpha at the end of the run
  double delta = 0.0;  // discount actually used (certificate reuses it)
};

// Online greedy: each request's flow is split into ceil(1/eps_fraction) chunks
// (last one smaller) and every chunk follows the path minimizing the total
// increment weight, ties resolved toward the lexicographically smallest edge-id
// sequence. The request's threshold comes from its final chunk's path at
// post-routing loads. delta defaults to the fractional discount for alpha.
RoutingRun run_online_routing(const RoutingInstance& inst, double eps_fraction,
                              LambdaRule rule = LambdaRule::MarginalSum,
                              std::optional<double> delta = std::nullopt);

struct RoutingCertificate {
  double cert = 0.0;   // sum_j lambda_j * f_j - (alpha-1) delta^(alpha/(alpha-1)) sum_e load^alpha
  double on = 0.0;
  double ratio = 0.0;  // on / cert (0 when on == 0)
  double bound = 0.0;  // alpha^alpha * (1 + kappa * eps)
  bool certified = false;
};

// Dual-style lower-bound certificate for the run; kappa absorbs the
// discretization slack of the chunked greedy.
RoutingCertificate routing_dual_certificate(const RoutingRun& run, const RoutingInstance& inst,
                                            double eps_fraction, double kappa = 10.0);

// Lexicographically-smallest shortest path from s to t by edge ids under
// nonnegative per-edge weights. Exposed for tests and the offline solver.
std::vector<int> shortest_path_lex(const RoutingInstance& inst,
                                   const std::vector<double>& weights, int s, int t);

}  // namespace nlpd::net
