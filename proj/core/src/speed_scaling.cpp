#include "nlpd/speed_scaling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nlpd::ss {

namespace {

void check_jobs(const SsInstance& ssi) {
  if (ssi.horizon <= 0) throw std::invalid_argument("speed scaling: horizon must be positive");
  if (!(ssi.beta > 0.0)) throw std::invalid_argument("speed scaling: beta must be positive");
  for (std::size_t j = 0; j < ssi.jobs.size(); ++j) {
    const SsJob& job = ssi.jobs[j];
    if (job.release < 0 || job.release >= ssi.horizon)
      throw std::invalid_argument("speed scaling: job " + std::to_string(j) +
                                  " released outside the horizon");
    if (!(job.work > 0.0))
      throw std::invalid_argument("speed scaling: job " + std::to_string(j) +
                                  " must have positive work");
    if (ssi.kernel == Kernel::Deadline) {
      if (job.deadline <= job.release)
        throw std::invalid_argument("speed scaling: job " + std::to_string(j) +
                                    " has an empty window");
      if (job.deadline > ssi.horizon)
        throw std::invalid_argument("speed scaling: job " + std::to_string(j) +
                                    " has deadline beyond the horizon");
    }
  }
  if (ssi.kernel == Kernel::Custom && !ssi.custom)
    throw std::invalid_argument("speed scaling: custom kernel requires a cost callback");
}

double kernel_cost(const SsInstance& ssi, int j, int t) {
  switch (ssi.kernel) {
    case Kernel::Deadline: return 0.0;
    case Kernel::Flow: return static_cast<double>(t - ssi.jobs[j].release);
    case Kernel::FlowPower:
      return std::pow(static_cast<double>(t - ssi.jobs[j].release), ssi.power);
    case Kernel::Custom: return ssi.custom(j, t);
  }
  return 0.0;
}

}  // namespace

Instance build_instance(const SsInstance& ssi) {
  check_jobs(ssi);
  Instance inst;
  inst.alpha = ssi.alpha;
  inst.machines = ssi.horizon;
  inst.jobs.reserve(ssi.jobs.size());
  for (std::size_t j = 0; j < ssi.jobs.size(); ++j) {
    const SsJob& job = ssi.jobs[j];
    JobSpec spec;
    spec.demand = job.work;
    int last = ssi.kernel == Kernel::Deadline ? job.deadline : ssi.horizon;
    for (int t = job.release; t < last; ++t)
      spec.options.push_back({t, 1.0, kernel_cost(ssi, static_cast<int>(j), t) / ssi.beta});
    inst.jobs.push_back(std::move(spec));
  }
  return inst;
}

GreedyScheduleResult greedy_schedule(const SsInstance& ssi, const Parameters& params) {
  GreedyScheduleResult res;
  res.instance = build_instance(ssi);
  res.run = run_online_fractional(res.instance, params);

  res.trace.horizon = ssi.horizon;
  res.trace.speed.assign(ssi.horizon, 0.0);
  res.trace.work.assign(ssi.jobs.size(), std::vector<double>(ssi.horizon, 0.0));
  for (std::size_t j = 0; j < ssi.jobs.size(); ++j) {
    const JobSpec& spec = res.instance.jobs[j];
    for (std::size_t k = 0; k < spec.options.size(); ++k) {
      int t = spec.options[k].machine;
      double w = res.run.state.x[j][k];
      res.trace.work[j][t] += w;
      res.trace.speed[t] += w;
    }
  }
  return res;
}

ScheduleTrace oa_speed_profile(const SsInstance& ssi) {
  if (ssi.kernel != Kernel::Deadline)
    throw std::invalid_argument("oa_speed_profile: defined for the deadline kernel only");
  check_jobs(ssi);

  const int T = ssi.horizon;
  const int n = static_cast<int>(ssi.jobs.size());
  ScheduleTrace trace;
  trace.horizon = T;
  trace.speed.assign(T, 0.0);
  trace.work.assign(n, std::vector<double>(T, 0.0));

  std::vector<double> remaining(n);
  for (int j = 0; j < n; ++j) remaining[j] = ssi.jobs[j].work;

  // Replan epochs: every distinct release slot.
  std::vector<int> epochs;
  for (const SsJob& job : ssi.jobs) epochs.push_back(job.release);
  std::sort(epochs.begin(), epochs.end());
  epochs.erase(std::unique(epochs.begin(), epochs.end()), epochs.end());

  std::vector<double> plan(T, 0.0);
  for (std::size_t ei = 0; ei < epochs.size(); ++ei) {
    int now = epochs[ei];
    int next = ei + 1 < epochs.size() ? epochs[ei + 1] : T;

    // Peel maximum-density intervals [s, d). Every available job is runnable
    // from `now`, so each peel starts where the previous one ended and the
    // per-slot speeds form a nonincreasing staircase.
    std::vector<std::pair<int, double>> pending;  // (deadline, remaining work)
    for (int j = 0; j < n; ++j)
      if (ssi.jobs[j].release <= now && remaining[j] > 1e-15)
        pending.push_back({ssi.jobs[j].deadline, remaining[j]});
    std::sort(pending.begin(), pending.end());

    std::fill(plan.begin() + now, plan.end(), 0.0);
    int s = now;
    std::size_t lo = 0;
    while (lo < pending.size()) {
      double best_density = -1.0;
      int best_d = -1;
      std::size_t best_hi = lo;
      double work = 0.0;
      for (std::size_t i = lo; i < pending.size(); ++i) {
        work += pending[i].second;
        int d = pending[i].first;
        if (i + 1 < pending.size() && pending[i + 1].first == d) continue;
        double density = work / static_cast<double>(d - s);
        if (density > best_density) {
          best_density = density;
          best_d = d;
          best_hi = i + 1;
        }
      }
      for (int t = s; t < best_d; ++t) plan[t] = best_density;
      s = best_d;
      lo = best_hi;
    }

    // Execute the plan Earliest-Deadline-First until the next replan.
    for (int t = now; t < next; ++t) {
      double budget = plan[t];
      trace.speed[t] = plan[t];
      while (budget > 1e-15) {
        int pick = -1;
        for (int j = 0; j < n; ++j) {
          if (ssi.jobs[j].release > t || ssi.jobs[j].deadline <= t || remaining[j] <= 1e-15)
            continue;
          if (pick < 0 || ssi.jobs[j].deadline < ssi.jobs[pick].deadline) pick = j;
        }
        if (pick < 0) break;
        double run = std::min(budget, remaining[pick]);
        trace.work[pick][t] += run;
        remaining[pick] -= run;
        budget -= run;
      }
    }
  }
  return trace;
}

double compare_profiles(const ScheduleTrace& a, const ScheduleTrace& b) {
  if (a.horizon != b.horizon)
    throw std::invalid_argument("compare_profiles: horizon mismatch");
  double gap = 0.0;
  for (int t = 0; t < a.horizon; ++t) gap = std::max(gap, std::abs(a.speed[t] - b.speed[t]));
  return gap;
}

}  // namespace nlpd::ss
