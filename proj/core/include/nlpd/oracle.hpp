#pragma once

#include "nlpd/routing.hpp"

namespace nlpd::oracle {

struct FractionalOpt {
  AssignmentState state;
  double objective = 0.0;
  int cycles = 0;
};

// Offline fractional optimum by cyclic exact block minimization: each pass
// re-solves every job's split (undiscounted water-fill) against the other
// jobs' loads. Stops when the best single-job improvement in a full pass drops
// below tol * (1 + objective). Convex problem, so this converges to the global
// optimum. Throws nlpd::numerical_error at the cycle cap.
FractionalOpt fractional_opt(const Instance& inst, double tol = 1e-8,
                             int max_cycles = 100000);

struct ProjGradOpt {
  AssignmentState state;
  double objective = 0.0;
  int iterations = 0;
};

// Independent re-solve by projected gradient with backtracking line search on
// the product of per-job simplices. Used to cross-check fractional_opt; the
// two must agree, and a disagreement means one of them is wrong.
ProjGradOpt fractional_opt_pg(const Instance& inst, double tol = 1e-10,
                              int max_iters = 200000);

struct RoutingOpt {
  std::vector<double> edge_load;
  double objective = 0.0;
  double fw_gap = 0.0;  // certified optimality gap at termination
  int iterations = 0;
};

// Offline fractional routing optimum by Frank-Wolfe: linearize at the current
// loads (per-edge weight alpha * load^(alpha-1)), send each request along a
// shortest path, and take the exact line-search step. Stops at duality gap
// <= tol * (1 + objective); reports the gap either way. The returned objective
// upper-bounds the optimum by at most fw_gap.
RoutingOpt fractional_opt_routing(const net::RoutingInstance& inst, double tol = 1e-8,
                                  long max_iters = 2000000);

struct BruteForceOpt {
  double objective = 0.0;
  std::vector<int> choice;  // per job: option index
};

// Exact integral optimum by exhaustive search with branch-and-bound pruning.
// Refuses instances with more than 2e6 assignments.
BruteForceOpt integer_opt_bruteforce(const Instance& inst);

}  // namespace nlpd::oracle
