#include "nlpd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "nlpd/waterfill.hpp"

namespace nlpd::oracle {

FractionalOpt fractional_opt(const Instance& inst, double tol, int max_cycles) {
  require_valid(inst);
  FractionalOpt res;
  res.state = make_empty_state(inst);
  const double alpha = inst.alpha;

  for (int cycle = 0; cycle < max_cycles; ++cycle) {
    res.state.loads = recompute_loads(res.state, inst);  // cap incremental drift
    double max_improve = 0.0;

    for (int j = 0; j < static_cast<int>(inst.jobs.size()); ++j) {
      const JobSpec& job = inst.jobs[j];
      double before = 0.0, after = 0.0;
      for (std::size_t k = 0; k < job.options.size(); ++k) {
        const MachineOption& opt = job.options[k];
        before += std::pow(res.state.loads[opt.machine], alpha) + opt.cost * res.state.x[j][k];
        res.state.loads[opt.machine] -= opt.load * res.state.x[j][k];
      }
      // cancellation can leave a touched load at -1e-17, which a non-integer
      // power turns into NaN
      for (const MachineOption& opt : job.options)
        res.state.loads[opt.machine] = std::max(0.0, res.state.loads[opt.machine]);
      // exact block minimizer: undiscounted water-fill against the others' loads
      WaterfillResult wf = waterfill_allocate(job, res.state.loads, alpha, 1.0);
      for (std::size_t k = 0; k < job.options.size(); ++k) {
        const MachineOption& opt = job.options[k];
        res.state.x[j][k] = wf.allocation[k];
        res.state.loads[opt.machine] += opt.load * wf.allocation[k];
        after += std::pow(res.state.loads[opt.machine], alpha) + opt.cost * wf.allocation[k];
      }
      max_improve = std::max(max_improve, before - after);
    }

    res.cycles = cycle + 1;
    res.objective = objective(res.state, inst);
    if (cycle > 0 && max_improve < tol * (1.0 + res.objective)) return res;
  }
  throw numerical_error("fractional_opt: no convergence in " + std::to_string(max_cycles) +
                        " cycles");
}

namespace {

// Euclidean projection of v onto {x >= 0, sum x = total}.
std::vector<double> project_simplex(std::vector<double> v, double total) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  int rho = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    double t = (cum - total) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) {
      rho = static_cast<int>(i + 1);
      theta = t;
    }
  }
  (void)rho;
  for (double& x : v) x = std::max(0.0, x - theta);
  return v;
}

double pg_objective(const AssignmentState& st, const Instance& inst) {
  double obj = 0.0;
  for (double L : st.loads) obj += std::pow(L, inst.alpha);
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
    for (std::size_t k = 0; k < st.x[j].size(); ++k)
      obj += inst.jobs[j].options[k].cost * st.x[j][k];
  return obj;
}

}  // namespace

ProjGradOpt fractional_opt_pg(const Instance& inst, double tol, int max_iters) {
  require_valid(inst);
  ProjGradOpt res;
  res.state = make_empty_state(inst);
  // feasible start: even split of each job's demand
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
    for (double& v : res.state.x[j])
      v = inst.jobs[j].demand / static_cast<double>(res.state.x[j].size());
  res.state.loads = recompute_loads(res.state, inst);

  const double alpha = inst.alpha;
  double step = 1.0;
  double obj = pg_objective(res.state, inst);
  int stall = 0;

  for (int iter = 0; iter < max_iters; ++iter) {
    AssignmentState cand = res.state;
    double moved2 = 0.0, descent = 0.0;

    // backtracking on the standard quadratic upper model
    for (int bt = 0; bt < 60; ++bt) {
      moved2 = 0.0;
      descent = 0.0;
      for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
        const JobSpec& job = inst.jobs[j];
        std::vector<double> target(job.options.size());
        for (std::size_t k = 0; k < job.options.size(); ++k) {
          const MachineOption& opt = job.options[k];
          double g = alpha * opt.load * std::pow(res.state.loads[opt.machine], alpha - 1.0) +
                     opt.cost;
          target[k] = res.state.x[j][k] - step * g;
          descent += g * res.state.x[j][k];
        }
        cand.x[j] = project_simplex(std::move(target), job.demand);
        for (std::size_t k = 0; k < job.options.size(); ++k) {
          double g = alpha * job.options[k].load *
                         std::pow(res.state.loads[job.options[k].machine], alpha - 1.0) +
                     job.options[k].cost;
          descent -= g * cand.x[j][k];
          double d = cand.x[j][k] - res.state.x[j][k];
          moved2 += d * d;
        }
      }
      cand.loads = recompute_loads(cand, inst);
      double cobj = pg_objective(cand, inst);
      if (cobj <= obj - descent + moved2 / (2.0 * step) + 1e-15 * (1.0 + std::abs(obj))) {
        double improve = obj - cobj;
        res.state = cand;
        obj = cobj;
        stall = improve < tol * (1.0 + std::abs(obj)) ? stall + 1 : 0;
        step = std::min(step * 1.3, 1e6);
        break;
      }
      step *= 0.5;
      if (bt == 59) stall = 100;  // step underflow: nothing left to gain
    }

    res.iterations = iter + 1;
    if (stall >= 5) break;
  }
  res.objective = obj;
  return res;
}

RoutingOpt fractional_opt_routing(const net::RoutingInstance& inst, double tol,
                                  long max_iters) {
  ValidationReport rep = net::validate_routing(inst);
  if (!rep.ok()) throw std::invalid_argument("invalid routing instance:\n" + rep.str());

  const double alpha = inst.alpha;
  const int R = static_cast<int>(inst.requests.size());
  RoutingOpt res;
  res.edge_load.assign(inst.edges.size(), 0.0);
  if (R == 0) return res;

  // per request: flow split over path atoms (edge-id sequences)
  std::vector<std::vector<std::pair<std::vector<int>, double>>> atoms(R);
  std::vector<double> w(inst.edges.size(), 0.0);
  for (int r = 0; r < R; ++r) {
    std::vector<int> p = net::shortest_path_lex(inst, w, inst.requests[r].s, inst.requests[r].t);
    for (int e : p) res.edge_load[e] += inst.requests[r].flow;
    atoms[r].push_back({std::move(p), inst.requests[r].flow});
  }

  auto path_cost = [&w](const std::vector<int>& p) {
    double c = 0.0;
    for (int e : p) c += w[e];
    return c;
  };
  auto refresh_weights = [&]() {
    for (std::size_t e = 0; e < w.size(); ++e)
      w[e] = alpha * std::pow(res.edge_load[e], alpha - 1.0);
  };
  auto total_obj = [&]() {
    double o = 0.0;
    for (double L : res.edge_load) o += std::pow(L, alpha);
    return o;
  };

  long iters = 0;
  while (true) {
    // certified duality gap at the current point
    refresh_weights();
    double gap = 0.0;
    for (int r = 0; r < R; ++r) {
      std::vector<int> sp =
          net::shortest_path_lex(inst, w, inst.requests[r].s, inst.requests[r].t);
      double best = path_cost(sp);
      for (const auto& [p, wt] : atoms[r]) gap += wt * path_cost(p);
      gap -= inst.requests[r].flow * best;
    }
    res.objective = total_obj();
    res.fw_gap = gap;
    if (gap <= tol * (1.0 + res.objective)) return res;

    // one pairwise sweep: shift flow from each request's costliest atom to its
    // current shortest path, with an exact line search
    for (int r = 0; r < R; ++r) {
      if (++iters > max_iters) {
        std::ostringstream os;
        os << "fractional_opt_routing: iteration cap " << max_iters
           << " exceeded (gap=" << res.fw_gap << ", objective=" << res.objective << ")";
        throw numerical_error(os.str());
      }
      refresh_weights();
      std::vector<int> sp =
          net::shortest_path_lex(inst, w, inst.requests[r].s, inst.requests[r].t);
      std::size_t away = 0;
      double away_cost = -1.0;
      for (std::size_t a = 0; a < atoms[r].size(); ++a) {
        double c = path_cost(atoms[r][a].first);
        if (c > away_cost) {
          away_cost = c;
          away = a;
        }
      }
      if (away_cost - path_cost(sp) <= 0.0) continue;

      std::map<int, int> delta;  // edge -> net multiplicity of the shift
      for (int e : sp) ++delta[e];
      for (int e : atoms[r][away].first) --delta[e];
      if (delta.empty()) continue;

      double gmax = atoms[r][away].second;
      auto dphi = [&](double g) {
        double d = 0.0;
        for (auto [e, cnt] : delta)
          d += alpha * cnt *
               std::pow(std::max(0.0, res.edge_load[e] + g * cnt), alpha - 1.0);
        return d;
      };
      double gamma = gmax;
      if (dphi(gmax) > 0.0) {
        double lo = 0.0, hi = gmax;
        for (int it = 0; it < 100; ++it) {
          double mid = 0.5 * (lo + hi);
          (dphi(mid) <= 0.0 ? lo : hi) = mid;
        }
        gamma = 0.5 * (lo + hi);
      }
      if (gamma <= 0.0) continue;

      for (auto [e, cnt] : delta)
        res.edge_load[e] = std::max(0.0, res.edge_load[e] + gamma * cnt);
      atoms[r][away].second -= gamma;
      if (atoms[r][away].second <= 1e-15 * inst.requests[r].flow)
        atoms[r].erase(atoms[r].begin() + static_cast<long>(away));
      auto it = std::find_if(atoms[r].begin(), atoms[r].end(),
                             [&sp](const auto& pr) { return pr.first == sp; });
      if (it != atoms[r].end())
        it->second += gamma;
      else
        atoms[r].push_back({sp, gamma});
    }
  }
}

namespace {

void bruteforce_dfs(const Instance& inst, std::size_t j, std::vector<double>& loads,
                    double partial, std::vector<int>& choice, BruteForceOpt& best) {
  if (partial >= best.objective) return;  // completing only adds cost
  if (j == inst.jobs.size()) {
    best.objective = partial;
    best.choice = choice;
    return;
  }
  const JobSpec& job = inst.jobs[j];
  for (std::size_t k = 0; k < job.options.size(); ++k) {
    const MachineOption& opt = job.options[k];
    // Restore by assignment, not subtraction: cancellation could leave a tiny
    // negative load, and pow(negative, non-integer alpha) is NaN.
    const double saved = loads[opt.machine];
    double before = std::pow(saved, inst.alpha);
    loads[opt.machine] = saved + opt.load * job.demand;
    double after = std::pow(loads[opt.machine], inst.alpha);
    choice[j] = static_cast<int>(k);
    bruteforce_dfs(inst, j + 1, loads, partial + after - before + opt.cost * job.demand,
                   choice, best);
    loads[opt.machine] = saved;
  }
}

}  // namespace

BruteForceOpt integer_opt_bruteforce(const Instance& inst) {
  require_valid(inst);
  double combos = 1.0;
  for (const JobSpec& job : inst.jobs) {
    combos *= static_cast<double>(job.options.size());
    if (combos > 2e6)
      throw std::invalid_argument(
          "integer_opt_bruteforce: more than 2e6 assignments; refusing");
  }
  BruteForceOpt best;
  best.objective = std::numeric_limits<double>::infinity();
  std::vector<double> loads(inst.machines, 0.0);
  std::vector<int> choice(inst.jobs.size(), -1);
  bruteforce_dfs(inst, 0, loads, 0.0, choice, best);
  return best;
}

}  // namespace nlpd::oracle
