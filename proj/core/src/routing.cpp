#include "nlpd/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace nlpd::net {

namespace {

// adjacency[u] lists (edge id, other endpoint) in ascending edge id
std::vector<std::vector<std::pair<int, int>>> adjacency(const RoutingInstance& inst) {
  std::vector<std::vector<std::pair<int, int>>> adj(inst.nodes);
  for (int e = 0; e < static_cast<int>(inst.edges.size()); ++e) {
    adj[inst.edges[e].u].push_back({e, inst.edges[e].v});
    adj[inst.edges[e].v].push_back({e, inst.edges[e].u});
  }
  return adj;
}

}  // namespace

ValidationReport validate_routing(const RoutingInstance& inst) {
  ValidationReport rep;
  auto flag = [&rep](int idx, std::string msg) { rep.issues.push_back({idx, std::move(msg)}); };

  if (!(inst.alpha > 1.0)) flag(-1, "alpha must exceed 1");
  if (inst.nodes <= 0) flag(-1, "graph must have at least one node");
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    const Edge& ed = inst.edges[e];
    if (ed.u < 0 || ed.u >= inst.nodes || ed.v < 0 || ed.v >= inst.nodes)
      flag(-1, "edge " + std::to_string(e) + " has endpoint out of range");
    else if (ed.u == ed.v)
      flag(-1, "edge " + std::to_string(e) + " is a self-loop");
  }
  if (!rep.ok()) return rep;  // component labels need a sane edge list

  std::vector<int> comp(inst.nodes, -1);
  int ncomp = 0;
  auto adj = adjacency(inst);
  for (int start = 0; start < inst.nodes; ++start) {
    if (comp[start] >= 0) continue;
    comp[start] = ncomp;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [e, v] : adj[u])
        if (comp[v] < 0) {
          comp[v] = ncomp;
          stack.push_back(v);
        }
    }
    ++ncomp;
  }

  for (std::size_t r = 0; r < inst.requests.size(); ++r) {
    const Request& req = inst.requests[r];
    int idx = static_cast<int>(r);
    if (req.s < 0 || req.s >= inst.nodes || req.t < 0 || req.t >= inst.nodes) {
      flag(idx, "request endpoint out of range");
      continue;
    }
    if (req.s == req.t) flag(idx, "request must join two distinct nodes");
    if (!(req.flow > 0.0)) flag(idx, "request flow must be positive");
    if (comp[req.s] != comp[req.t]) flag(idx, "request endpoints are not connected");
  }
  return rep;
}

double edge_increment_weight(double load, double eps, double alpha) {
  return std::pow(load + eps, alpha) - std::pow(load, alpha);
}

std::vector<int> shortest_path_lex(const RoutingInstance& inst,
                                   const std::vector<double>& weights, int s, int t) {
  if (weights.size() != inst.edges.size())
    throw std::invalid_argument("shortest_path_lex: weight vector size mismatch");
  for (double w : weights)
    if (!(w >= 0.0)) throw std::invalid_argument("shortest_path_lex: negative weight");

  auto adj = adjacency(inst);
  for (auto& lst : adj) std::sort(lst.begin(), lst.end());

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(inst.nodes, inf);
  std::vector<std::vector<int>> path(inst.nodes);
  std::vector<std::uint64_t> version(inst.nodes, 0);

  using Item = std::tuple<double, int, std::uint64_t>;  // (dist, node, version at push)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s] = 0.0;
  pq.push({0.0, s, 0});

  while (!pq.empty()) {
    auto [d, u, ver] = pq.top();
    pq.pop();
    if (ver != version[u] || d != dist[u]) continue;  // superseded label
    for (auto [e, v] : adj[u]) {
      double nd = d + weights[e];
      bool better = nd < dist[v];
      if (!better && nd == dist[v]) {
        // same length: prefer the lexicographically smaller edge sequence
        std::vector<int> cand = path[u];
        cand.push_back(e);
        better = std::lexicographical_compare(cand.begin(), cand.end(), path[v].begin(),
                                              path[v].end());
        if (better) {
          dist[v] = nd;
          path[v] = std::move(cand);
          pq.push({nd, v, ++version[v]});
        }
        continue;
      }
      if (better) {
        dist[v] = nd;
        path[v] = path[u];
        path[v].push_back(e);
        pq.push({nd, v, ++version[v]});
      }
    }
  }
  if (dist[t] == inf) throw std::invalid_argument("shortest_path_lex: target unreachable");
  return path[t];
}

RoutingRun run_online_routing(const RoutingInstance& inst, double eps_fraction,
                              LambdaRule rule, std::optional<double> delta_opt) {
  // Zero-flow requests are legal here by convention (no-op, lambda = 0), so
  // validate the instance with them filtered out.
  RoutingInstance checked = inst;
  checked.requests.erase(
      std::remove_if(checked.requests.begin(), checked.requests.end(),
                     [](const Request& r) { return r.flow == 0.0; }),
      checked.requests.end());
  ValidationReport rep = validate_routing(checked);
  if (!rep.ok()) throw std::invalid_argument("invalid routing instance:\n" + rep.str());
  if (!(eps_fraction > 0.0) || !(eps_fraction <= 1.0))
    throw std::invalid_argument("run_online_routing: eps_fraction must lie in (0, 1]");

  RoutingRun run;
  run.delta = delta_opt ? *delta_opt : 1.0 / std::pow(inst.alpha, inst.alpha - 1.0);
  run.edge_load.assign(inst.edges.size(), 0.0);
  run.lambda.resize(inst.requests.size());

  std::vector<double> weights(inst.edges.size());
  const int chunks = static_cast<int>(std::ceil(1.0 / eps_fraction - 1e-12));

  for (int r = 0; r < static_cast<int>(inst.requests.size()); ++r) {
    const Request& req = inst.requests[r];
    RouteEvent ev;
    ev.request = r;
    if (req.flow == 0.0) {
      run.lambda[r] = 0.0;
      run.log.push_back(std::move(ev));
      continue;
    }
    std::vector<int> final_path;

    const double full = req.flow * eps_fraction;
    for (int i = 0; i < chunks; ++i) {
      double amount = i + 1 < chunks ? full : req.flow - full * (chunks - 1);
      for (std::size_t e = 0; e < weights.size(); ++e)
        weights[e] = edge_increment_weight(run.edge_load[e], amount, inst.alpha);
      std::vector<int> p = shortest_path_lex(inst, weights, req.s, req.t);
      for (int e : p) run.edge_load[e] += amount;

      auto it = std::find_if(ev.paths.begin(), ev.paths.end(),
                             [&p](const auto& pr) { return pr.first == p; });
      if (it == ev.paths.end())
        ev.paths.push_back({p, amount});
      else
        it->second += amount;
      if (i + 1 == chunks) final_path = std::move(p);
    }

    double lam = 0.0;
    if (rule == LambdaRule::MarginalSum) {
      for (int e : final_path)
        lam += inst.alpha * std::pow(run.edge_load[e], inst.alpha - 1.0);
      lam *= run.delta;
    } else {
      double sum = 0.0;
      for (int e : final_path) sum += run.edge_load[e];
      lam = run.delta * inst.alpha * std::pow(sum, inst.alpha - 1.0);
    }
    run.lambda[r] = lam;
    ev.lambda = lam;
    run.log.push_back(std::move(ev));
  }

  run.on = 0.0;
  for (double L : run.edge_load) run.on += std::pow(L, inst.alpha);
  return run;
}

RoutingCertificate routing_dual_certificate(const RoutingRun& run, const RoutingInstance& inst,
                                            double eps_fraction, double kappa) {
  RoutingCertificate cert;
  cert.on = run.on;
  cert.bound = std::pow(inst.alpha, inst.alpha) * (1.0 + kappa * eps_fraction);

  double lam_part = 0.0;
  for (std::size_t r = 0; r < inst.requests.size(); ++r)
    lam_part += run.lambda[r] * inst.requests[r].flow;
  double load_part = 0.0;
  for (double L : run.edge_load) load_part += std::pow(L, inst.alpha);
  cert.cert = lam_part - (inst.alpha - 1.0) *
                             std::pow(run.delta, inst.alpha / (inst.alpha - 1.0)) * load_part;

  if (cert.on == 0.0) {
    cert.ratio = 0.0;
    cert.certified = true;
  } else if (cert.cert <= 0.0) {
    cert.ratio = std::numeric_limits<double>::infinity();
    cert.certified = false;
  } else {
    cert.ratio = cert.on / cert.cert;
    cert.certified = cert.on <= cert.bound * cert.cert * (1.0 + 1e-9);
  }
  return cert;
}

}  // namespace nlpd::net
