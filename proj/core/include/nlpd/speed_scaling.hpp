#pragma once

#include <functional>

#include "nlpd/waterfill.hpp"

namespace nlpd::ss {

enum class Kernel {
  Deadline,   // zero cost inside [release, deadline), job must finish there
  Flow,       // cost (t - release) per unit of work run in slot t
  FlowPower,  // cost (t - release)^power
  Custom,     // user-supplied cost(job, slot)
};

struct SsJob {
  int release = 0;
  int deadline = 0;  // exclusive slot bound; used by the Deadline kernel only
  double work = 1.0;
};

struct SsInstance {
  double alpha = 2.0;
  int horizon = 0;    // slots 0 .. horizon-1
  double beta = 1.0;  // weight trading scheduling cost against energy
  Kernel kernel = Kernel::Deadline;
  double power = 2.0;  // exponent for FlowPower
  std::function<double(int job, int slot)> custom;  // for Kernel::Custom
  std::vector<SsJob> jobs;
};

// Reduction to the assignment model: machines are the slots, every permitted
// (job, slot) pair has unit load and cost kernel(j,t)/beta, and the demand is
// the job's work. Deadline jobs admit exactly the slots in [release, deadline);
// the other kernels admit [release, horizon). Throws std::invalid_argument on
// empty windows, deadlines beyond the horizon, or releases outside it.
Instance build_instance(const SsInstance& ssi);

struct ScheduleTrace {
  int horizon = 0;
  std::vector<double> speed;              // per slot: total work executed
  std::vector<std::vector<double>> work;  // work[j][t]
};

struct GreedyScheduleResult {
  ScheduleTrace trace;
  FractionalRun run;      // thresholds reusable as a dual certificate
  Instance instance;      // the reduction that was solved
};

// Runs the online water-filling greedy on the reduction and reshapes the
// assignment into a schedule trace.
GreedyScheduleResult greedy_schedule(const SsInstance& ssi, const Parameters& params = {});

// Reference policy for the deadline kernel: at each release, replan all
// remaining work with the slotted optimal schedule (peel maximum-density slot
// intervals; density = remaining work due inside / slot count), then execute
// the plan Earliest-Deadline-First until the next release.
ScheduleTrace oa_speed_profile(const SsInstance& ssi);

// Largest per-slot absolute speed difference. Throws on horizon mismatch.
double compare_profiles(const ScheduleTrace& a, const ScheduleTrace& b);

}  // namespace nlpd::ss
