#pragma once

#include "nlpd/model.hpp"

namespace nlpd {

// Rate at which the discounted objective grows when a job with per-unit load
// `ell` and per-unit cost `cost` receives work on a machine currently at `load`:
//   delta * alpha * ell * load^(alpha-1) + cost.
double marginal_rate(double load, double ell, double cost, double alpha, double delta);

struct WaterfillResult {
  std::vector<double> allocation;  // aligned with the job's option list
  double theta = 0.0;              // common marginal rate on the support
  int iterations = 0;              // bisection steps used
};

// Splits one job's demand across its allowed machines so that every machine
// receiving work ends at marginal rate theta and every other allowed machine
// already sits at or above theta. theta is located by bisection on the monotone
// map theta -> total work absorbed below theta; `loads` is indexed by machine.
// Throws nlpd::numerical_error if bisection fails to converge in 200 steps.
WaterfillResult waterfill_allocate(const JobSpec& job, const std::vector<double>& loads,
                                   double alpha, double delta);

struct WaterfillEvent {
  int job = 0;
  double theta = 0.0;
  std::vector<int> support;        // machines that received work
  std::vector<double> allocation;  // aligned with `support`
};

struct FractionalRun {
  AssignmentState state;
  std::vector<double> lambda;               // per job: threshold at assignment time
  std::vector<std::optional<int>> last_job; // per machine: last job that placed work
  std::vector<WaterfillEvent> log;
};

// Processes jobs in order, water-filling each against the loads left by its
// predecessors. Deterministic: identical inputs give identical outputs.
FractionalRun run_online_fractional(const Instance& inst, const Parameters& params = {});

}  // namespace nlpd
