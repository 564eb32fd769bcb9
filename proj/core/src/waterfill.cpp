#include "nlpd/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace nlpd {

double marginal_rate(double load, double ell, double cost, double alpha, double delta) {
  return delta * alpha * ell * std::pow(load, alpha - 1.0) + cost;
}

namespace {

// Work absorbed by option k if every touched machine is brought to marginal
// rate theta: lift machine k's load to ((theta-c)/(delta*alpha*ell))^(1/(alpha-1)),
// never below its current load.
double absorbed(const MachineOption& opt, double current_load, double theta, double alpha,
                double delta) {
  double num = theta - opt.cost;
  if (num <= 0.0) return 0.0;
  double target = std::pow(num / (delta * alpha * opt.load), 1.0 / (alpha - 1.0));
  if (target <= current_load) return 0.0;
  return (target - current_load) / opt.load;
}

}  // namespace

WaterfillResult waterfill_allocate(const JobSpec& job, const std::vector<double>& loads,
                                   double alpha, double delta) {
  if (job.options.empty())
    throw std::invalid_argument("waterfill_allocate: job has no allowed machines");
  if (!(job.demand > 0.0))
    throw std::invalid_argument("waterfill_allocate: demand must be positive");
  if (!(alpha > 1.0))
    throw std::domain_error("waterfill_allocate: alpha must exceed 1");
  if (!(delta > 0.0))
    throw std::domain_error("waterfill_allocate: delta must be positive");

  const std::size_t n = job.options.size();
  auto total_absorbed = [&](double theta) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      sum += absorbed(job.options[k], loads.at(job.options[k].machine), theta, alpha, delta);
    return sum;
  };

  // Entry marginal of the cheapest machine absorbs nothing; that brackets from below.
  double lo = std::numeric_limits<double>::infinity();
  for (const MachineOption& opt : job.options)
    lo = std::min(lo, marginal_rate(loads.at(opt.machine), opt.load, opt.cost, alpha, delta));

  const int kMaxIters = 200;
  int iters = 0;
  double hi = lo > 0.0 ? 2.0 * lo : 1.0;
  while (total_absorbed(hi) < job.demand) {
    lo = hi;
    hi *= 2.0;
    if (++iters >= kMaxIters)
      throw numerical_error("waterfill_allocate: no upper bracket after doubling");
  }

  // Bisect until double precision is exhausted: the absorption map can be very
  // steep in theta (small alpha, light loads), so any fixed theta-width stop
  // can leave a demand residual far above the ulp-level jump at full precision.
  for (; iters < kMaxIters; ++iters) {
    double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;  // no representable point left between
    if (total_absorbed(mid) >= job.demand)
      hi = mid;
    else
      lo = mid;
  }

  WaterfillResult res;
  res.theta = hi;  // the >= demand side of the bracket
  res.iterations = iters;
  res.allocation.resize(n);
  double placed = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    res.allocation[k] =
        absorbed(job.options[k], loads.at(job.options[k].machine), res.theta, alpha, delta);
    placed += res.allocation[k];
  }

  if (std::abs(placed - job.demand) > 1e-9 * job.demand) {
    std::ostringstream os;
    os << "waterfill_allocate: bisection residual " << placed - job.demand << " for demand "
       << job.demand << " (theta=" << res.theta << ", width=" << hi - lo
       << ", iters=" << iters << ")";
    throw numerical_error(os.str());
  }
  return res;
}

FractionalRun run_online_fractional(const Instance& inst, const Parameters& params) {
  require_valid(inst);
  const double delta = params.resolve_delta(inst.alpha);

  FractionalRun run;
  run.state = make_empty_state(inst);
  run.lambda.resize(inst.jobs.size());
  run.last_job.assign(inst.machines, std::nullopt);
  run.log.reserve(inst.jobs.size());

  for (int j = 0; j < static_cast<int>(inst.jobs.size()); ++j) {
    WaterfillResult wf;
    try {
      wf = waterfill_allocate(inst.jobs[j], run.state.loads, inst.alpha, delta);
    } catch (const numerical_error& e) {
      throw numerical_error("job " + std::to_string(j) + ": " + e.what());
    }
    apply_allocation(run.state, inst, j, wf.allocation);
    run.lambda[j] = wf.theta;

    WaterfillEvent ev;
    ev.job = j;
    ev.theta = wf.theta;
    for (std::size_t k = 0; k < wf.allocation.size(); ++k) {
      if (wf.allocation[k] > 0.0) {
        ev.support.push_back(inst.jobs[j].options[k].machine);
        ev.allocation.push_back(wf.allocation[k]);
        run.last_job[inst.jobs[j].options[k].machine] = j;
      }
    }
    run.log.push_back(std::move(ev));
  }
  return run;
}

}  // namespace nlpd
