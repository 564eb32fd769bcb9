// Acceptance suite: one check per guaranteed property, each printing a single
// PASS/FAIL line with the measured margins. Run with no arguments for all
// checks, or with criterion numbers (1..11) to run a subset. The exit code is
// the number of failed criteria.
//
// All tolerances are pinned here, next to the check they guard.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "nlpd/dual.hpp"
#include "nlpd/generators.hpp"
#include "nlpd/integer_greedy.hpp"
#include "nlpd/oracle.hpp"
#include "nlpd/rounding.hpp"
#include "nlpd/routing.hpp"
#include "nlpd/speed_scaling.hpp"
#include "nlpd/waterfill.hpp"

using namespace nlpd;

namespace {

struct Outcome {
  bool pass = false;
  std::string details;
};

std::string fmt(const char* f, ...) {
  char buf[768];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Shared corpus for criteria 1-3: 210 fractional instances, three exponents.
std::vector<Instance> fractional_corpus() {
  std::vector<Instance> out;
  const double alphas[] = {1.5, 2.0, 3.0};
  for (int a = 0; a < 3; ++a) {
    for (int i = 0; i < 70; ++i) {
      gen::RandomOngapParams p;
      p.alpha = alphas[a];
      p.jobs = 5 + (i * 7) % 46;      // 5 .. 50
      p.machines = 2 + (i * 3) % 9;   // 2 .. 10
      p.density = 0.5 + 0.1 * (i % 5);
      out.push_back(gen::random_ongap(p, rng::derive(1000 + a, i)));
    }
  }
  return out;
}

// ---------------------------------------------------------------- criterion 1

Outcome c1_fractional_competitiveness() {
  auto t0 = std::chrono::steady_clock::now();
  double worst_vs_dual = 0.0;  // max ON / (alpha^alpha * g)
  double worst_vs_opt = 0.0;   // max g / OPT
  int n = 0;
  for (const Instance& inst : fractional_corpus()) {
    FractionalRun run = run_online_fractional(inst);
    CertificateReport cert = certify_run(run, inst);
    double bound = std::pow(inst.alpha, inst.alpha);
    if (!(cert.dual > 0.0))
      return {false, fmt("instance %d: dual certificate %.6g is not positive", n, cert.dual)};
    worst_vs_dual = std::max(worst_vs_dual, cert.on / (bound * cert.dual));
    // The block-descent objective upper-bounds the optimum, so g <= obj * (1 + 1e-6)
    // is the conservative direction of "g <= OPT + 1e-6 * OPT".
    oracle::FractionalOpt opt = oracle::fractional_opt(inst, 1e-8);
    worst_vs_opt = std::max(worst_vs_opt, cert.dual / opt.objective);
    if (cert.on > bound * cert.dual * (1.0 + 1e-9))
      return {false, fmt("instance %d: ON %.9g exceeds alpha^alpha * g = %.9g", n,
                         cert.on, bound * cert.dual)};
    if (cert.dual > opt.objective * (1.0 + 1e-6))
      return {false, fmt("instance %d: g %.9g exceeds offline optimum %.9g", n,
                         cert.dual, opt.objective)};
    ++n;
  }
  double secs = seconds_since(t0);
  bool in_time = secs < 60.0;
  return {in_time,
          fmt("%d instances; max ON/(alpha^alpha*g) = %.6f, max g/OPT = %.9f, %.1f s%s", n,
              worst_vs_dual, worst_vs_opt, secs, in_time ? "" : " (over the 60 s budget)")};
}

// ---------------------------------------------------------------- criterion 2

Outcome c2_waterfill_kkt() {
  double worst_support = 0.0;     // max relative |marginal - theta| on the support
  double worst_nonsupport = 0.0;  // max relative shortfall of theta - marginal off it
  long long jobs_checked = 0;
  for (const Instance& inst : fractional_corpus()) {
    const double delta = Parameters{}.resolve_delta(inst.alpha);
    std::vector<double> loads(inst.machines, 0.0);
    for (const JobSpec& job : inst.jobs) {
      WaterfillResult res = waterfill_allocate(job, loads, inst.alpha, delta);
      // apply, then check marginals at the post-placement loads
      for (std::size_t k = 0; k < job.options.size(); ++k)
        loads[job.options[k].machine] += job.options[k].load * res.allocation[k];
      const double theta = res.theta;
      for (std::size_t k = 0; k < job.options.size(); ++k) {
        const MachineOption& o = job.options[k];
        double marg = marginal_rate(loads[o.machine], o.load, o.cost, inst.alpha, delta);
        if (res.allocation[k] > 1e-12 * job.demand) {
          double rel = std::abs(marg - theta) / std::max(theta, 1e-300);
          worst_support = std::max(worst_support, rel);
          if (rel > 1e-7)
            return {false, fmt("support marginal off by %.3g relative (tolerance 1e-7)", rel)};
        } else {
          double shortfall = (theta - marg) / std::max(theta, 1e-300);
          worst_nonsupport = std::max(worst_nonsupport, shortfall);
          if (marg < theta * (1.0 - 1e-7))
            return {false,
                    fmt("idle machine marginal %.9g below threshold %.9g", marg, theta)};
        }
      }
      ++jobs_checked;
    }
  }
  return {true, fmt("%lld jobs; max support deviation %.2e, max idle shortfall %.2e (tol 1e-7)",
                    jobs_checked, worst_support, worst_nonsupport)};
}

// ---------------------------------------------------------------- criterion 3

Outcome c3_last_toucher_argmax() {
  int runs = 0, ok = 0;
  for (const Instance& inst : fractional_corpus()) {
    FractionalRun run = run_online_fractional(inst);
    CertificateReport cert = certify_run(run, inst);
    ++runs;
    ok += cert.psi_check ? 1 : 0;
  }
  return {ok == runs, fmt("last toucher attains the argmax ratio on %d/%d runs (tol 1e-7)",
                          ok, runs)};
}

// ---------------------------------------------------------------- criterion 4

Outcome c4_oa_equivalence() {
  auto profile_gap = [](const ss::SsInstance& ssi) {
    ss::GreedyScheduleResult res = ss::greedy_schedule(ssi);
    ss::ScheduleTrace oa = ss::oa_speed_profile(ssi);
    return ss::compare_profiles(res.trace, oa);
  };
  double generic_max = 0.0, agreeable_max = 0.0;
  int generic_bad = 0;
  const int N = 60;
  for (int i = 0; i < N; ++i) {
    gen::RandomSsParams p;
    p.jobs = 3 + (i * 5) % 18;      // 3 .. 20
    p.horizon = 8 + (i * 7) % 43;   // 8 .. 50
    double gap = profile_gap(gen::random_speed_scaling(p, rng::derive(4000, i)));
    generic_max = std::max(generic_max, gap);
    if (gap > 1e-6) ++generic_bad;
    p.agreeable = true;
    agreeable_max =
        std::max(agreeable_max, profile_gap(gen::random_speed_scaling(p, rng::derive(4000, i))));
  }
  bool pass = generic_bad == 0;
  return {pass,
          fmt("max per-slot speed gap %.3g over %d generic instances (%d above 1e-6); "
              "agreeable-order subset max gap %.3g — the equivalence holds only when "
              "arrival order matches deadline order",
              generic_max, N, generic_bad, agreeable_max)};
}

// ---------------------------------------------------------------- criterion 5

Outcome c5_inequality_fuzz() {
  auto t0 = std::chrono::steady_clock::now();
  const double alphas[] = {1.5, 2.0, 3.0, 5.0};
  double min_slack = std::numeric_limits<double>::infinity();
  long long checks = 0;
  for (int i = 0; i < 10000; ++i) {
    rng::SplitMix64 g(rng::derive(5000, i));
    int T = 1 + static_cast<int>(g.next() % 20);
    std::vector<double> seq(T);
    switch (i % 5) {
      case 0:
        for (double& v : seq) v = g.uniform();
        break;
      case 1:
        for (double& v : seq) v = std::pow(10.0, -4.0 + 6.0 * g.uniform());
        break;
      case 2:
        for (double& v : seq) v = std::pow(10.0, -4.0 + 6.0 * g.uniform());
        std::sort(seq.begin(), seq.end());
        break;
      case 3:
        for (double& v : seq) v = std::pow(10.0, -4.0 + 6.0 * g.uniform());
        std::sort(seq.begin(), seq.end(), std::greater<>());
        break;
      case 4:
        for (double& v : seq) v = 1e-9 * g.uniform();
        seq[g.next() % T] = 1e3 * (0.5 + g.uniform());
        break;
    }
    for (double alpha : alphas) {
      InequalityCheck chk = check_key_inequality(seq, alpha);
      min_slack = std::min(min_slack, chk.lhs - chk.rhs);
      ++checks;
      if (!chk.holds)
        return {false, fmt("violated at alpha %.1f, T=%d, family %d: lhs %.12g < rhs %.12g",
                           alpha, T, i % 5, chk.lhs, chk.rhs)};
    }
  }
  double secs = seconds_since(t0);
  bool in_time = secs < 10.0;
  return {in_time, fmt("%lld checks hold (rel tol 1e-12); min lhs-rhs slack %.3e, %.2f s%s",
                       checks, min_slack, secs, in_time ? "" : " (over the 10 s budget)")};
}

// Shared corpus for criteria 6-7: brute-forceable integral instances.
std::vector<Instance> integral_corpus() {
  std::vector<Instance> out;
  const double alphas[] = {1.5, 2.0, 3.0};
  for (int i = 0; i < 102; ++i) {
    gen::RandomOngapParams p;
    p.alpha = alphas[i % 3];
    p.machines = 2 + i % 3;  // 2 .. 4
    p.jobs = (p.machines == 4) ? 4 + (i * 3) % 6    // 4 .. 9  (4^9 combos)
                               : 4 + (i * 3) % 9;   // 4 .. 12 (<= 3^12 combos)
    p.density = 0.8;
    out.push_back(gen::random_ongap(p, rng::derive(6000, i)));
  }
  return out;
}

// ---------------------------------------------------------------- criterion 6

Outcome c6_integral_competitiveness() {
  double worst_vs_dual = 0.0, worst_vs_opt = 0.0;
  int n = 0;
  for (const Instance& inst : integral_corpus()) {
    const double bound = std::exp(1.0) * std::pow(std::exp(1.0) * (inst.alpha + 1.0), inst.alpha);
    Instance aug = augmented_instance(inst);
    IntegerRun run = greedy_assign_integer(aug);
    CertificateReport cert = integer_dual_bound(run, aug);
    if (!(cert.dual > 0.0))
      return {false, fmt("instance %d: integral dual %.6g is not positive", n, cert.dual)};
    worst_vs_dual = std::max(worst_vs_dual, cert.on / (bound * cert.dual));
    if (cert.on > bound * cert.dual * (1.0 + 1e-9))
      return {false, fmt("instance %d: augmented ON %.9g exceeds bound * g = %.9g", n,
                         cert.on, bound * cert.dual)};
    double on_orig = objective(run.state, inst);
    double opt_orig = oracle::integer_opt_bruteforce(inst).objective;
    worst_vs_opt = std::max(worst_vs_opt, on_orig / (2.0 * bound * opt_orig));
    if (on_orig > 2.0 * bound * opt_orig * (1.0 + 1e-9))
      return {false, fmt("instance %d: original ON %.9g exceeds 2 * bound * OPT = %.9g", n,
                         on_orig, 2.0 * bound * opt_orig)};
    ++n;
  }
  return {true, fmt("%d instances; max ON_aug/(bound*g) = %.4f, max ON/(2*bound*OPT) = %.4f",
                    n, worst_vs_dual, worst_vs_opt)};
}

// ---------------------------------------------------------------- criterion 7

Outcome c7_augmentation_doubling() {
  double worst = 0.0;
  int n = 0;
  for (const Instance& inst : integral_corpus()) {
    double opt_orig = oracle::integer_opt_bruteforce(inst).objective;
    double opt_aug = oracle::integer_opt_bruteforce(augmented_instance(inst)).objective;
    worst = std::max(worst, opt_aug / (2.0 * opt_orig));
    if (opt_aug > 2.0 * opt_orig * (1.0 + 1e-9))
      return {false, fmt("instance %d: augmented OPT %.9g exceeds twice the original %.9g",
                         n, opt_aug, opt_orig)};
    ++n;
  }
  return {true, fmt("%d instances brute-forced; max OPT_aug/(2*OPT) = %.6f", n, worst)};
}

// ---------------------------------------------------------------- criterion 8

Outcome c8_split_gap() {
  for (int m : {2, 4, 8}) {
    Instance inst = gen::split_gap(m, 2.0);
    double frac = oracle::fractional_opt(inst, 1e-12).objective;
    double want = std::pow(m, 1.0 - 2.0);  // m^(1-alpha) = 1/m
    if (std::abs(frac - want) > 1e-9)
      return {false, fmt("m=%d: fractional optimum %.12g != %.12g", m, frac, want)};
    double integral = oracle::integer_opt_bruteforce(inst).objective;
    if (std::abs(integral - 1.0) > 1e-9)
      return {false, fmt("m=%d: integral optimum %.12g != 1", m, integral)};
  }
  return {true, "m in {2,4,8}: fractional optimum = 1/m and integral optimum = 1, within 1e-9"};
}

// ---------------------------------------------------------------- criterion 9

Outcome c9_routing() {
  const double eps_grid[] = {1e-1, 1e-2, 1e-3};
  const int N = 50;
  double slack[3] = {0.0, 0.0, 0.0};
  double worst_vs_opt = 0.0;
  const double alphas[] = {1.5, 2.0, 3.0};
  for (int i = 0; i < N; ++i) {
    gen::RandomGraphParams p;
    p.alpha = alphas[i % 3];
    p.nodes = 6 + (i * 2) % 15;  // 6 .. 20
    p.requests = 2 + i % 9;      // 2 .. 10
    net::RoutingInstance inst = gen::random_graph(p, rng::derive(9000, i));
    const double apow = std::pow(inst.alpha, inst.alpha);

    oracle::RoutingOpt fw = oracle::fractional_opt_routing(inst, 1e-7);
    for (int e = 0; e < 3; ++e) {
      net::RoutingRun run = net::run_online_routing(inst, eps_grid[e]);
      net::RoutingCertificate cert = net::routing_dual_certificate(run, inst, eps_grid[e]);
      if (!(cert.cert > 0.0))
        return {false, fmt("graph %d eps %.0e: certificate %.6g is not positive", i,
                           eps_grid[e], cert.cert)};
      slack[e] = std::max(slack[e], std::max(0.0, run.on / (apow * cert.cert) - 1.0));
      if (e == 2) {  // the headline eps = 1e-3 checks
        // Frank-Wolfe's objective upper-bounds the optimum, so this is the
        // conservative direction of "cert <= OPT + tolerance".
        worst_vs_opt = std::max(worst_vs_opt, cert.cert / fw.objective);
        if (cert.cert > fw.objective + 1e-6 * (1.0 + fw.objective))
          return {false, fmt("graph %d: certificate %.9g exceeds offline optimum %.9g", i,
                             cert.cert, fw.objective)};
        if (run.on > apow * cert.cert * (1.0 + 10.0 * eps_grid[e]) * (1.0 + 1e-9))
          return {false, fmt("graph %d: ON %.9g exceeds alpha^alpha*(1+10eps)*cert = %.9g",
                             i, run.on,
                             apow * cert.cert * (1.0 + 10.0 * eps_grid[e]))};
      }
    }
  }
  if (!(slack[0] + 1e-9 >= slack[1] && slack[1] + 1e-9 >= slack[2]))
    return {false, fmt("slack did not shrink with eps: %.3e -> %.3e -> %.3e", slack[0],
                       slack[1], slack[2])};
  return {true, fmt("%d graphs; max cert/OPT = %.6f; slack by eps 1e-1/1e-2/1e-3 = "
                    "%.2e / %.2e / %.2e (nonincreasing)",
                    N, worst_vs_opt, slack[0], slack[1], slack[2])};
}

// ---------------------------------------------------------------- criterion 10

Outcome c10_rounding() {
  const std::size_t B = 10000;
  double worst_sigma = 0.0;  // max |mean - load| / (3 sigma + abs floor)
  for (int i = 0; i < 20; ++i) {
    gen::RandomOngapParams p;
    p.machines = 2 + i % 5;       // 2 .. 6
    p.jobs = 4 + (i * 3) % 9;     // 4 .. 12
    Instance inst = gen::random_ongap(p, rng::derive(7000, i));
    FractionalRun run = run_online_fractional(inst);

    std::vector<double> sum(inst.machines, 0.0), sumsq(inst.machines, 0.0);
    std::uint64_t base = rng::derive(7700, i);
    for (std::size_t b = 0; b < B; ++b) {
      RoundedSample s = round_assignment(run.state, inst, rng::derive(base, b));
      std::vector<double> load(inst.machines, 0.0);
      for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
        const MachineOption& o = inst.jobs[j].options[s.choice[j]];
        load[o.machine] += o.load * inst.jobs[j].demand;
      }
      for (int m = 0; m < inst.machines; ++m) {
        sum[m] += load[m];
        sumsq[m] += load[m] * load[m];
      }
    }
    for (int m = 0; m < inst.machines; ++m) {
      double mean = sum[m] / static_cast<double>(B);
      double var = std::max(0.0, sumsq[m] / static_cast<double>(B) - mean * mean);
      double sigma_mean = std::sqrt(var / static_cast<double>(B));
      double tol = 3.0 * sigma_mean + 1e-9 * (1.0 + std::abs(run.state.loads[m]));
      double dev = std::abs(mean - run.state.loads[m]);
      worst_sigma = std::max(worst_sigma, dev / tol);
      if (dev > tol)
        return {false, fmt("instance %d machine %d: mean %.9g vs fractional %.9g "
                           "(3 sigma = %.3g)",
                           i, m, mean, run.state.loads[m], 3.0 * sigma_mean)};
    }
    // identical seeds reproduce identical roundings, bit for bit
    for (std::size_t b = 0; b < 5; ++b) {
      RoundedSample s1 = round_assignment(run.state, inst, rng::derive(base, b));
      RoundedSample s2 = round_assignment(run.state, inst, rng::derive(base, b));
      if (s1.choice != s2.choice || s1.load_cost != s2.load_cost)
        return {false, fmt("instance %d sample %zu: identical seeds disagreed", i, b)};
    }
  }
  return {true, fmt("20 instances x %zu roundings; worst deviation at %.2f of its 3-sigma "
                    "budget; same-seed draws bit-identical",
                    B, worst_sigma)};
}

// ---------------------------------------------------------------- criterion 11

Outcome c11_weak_duality() {
  double worst = 0.0;
  long long checks = 0;
  const double scales[] = {1e-3, 1e-1, 1.0, 1e1, 1e3};
  for (int i = 0; i < 50; ++i) {
    gen::RandomOngapParams p;
    p.machines = 2 + i % 7;       // 2 .. 8
    p.jobs = 5 + (i * 3) % 16;    // 5 .. 20
    Instance inst = gen::random_ongap(p, rng::derive(8000, i));
    double opt = oracle::fractional_opt(inst, 1e-9).objective;
    rng::SplitMix64 g(rng::derive(8800, i));
    for (int t = 0; t < 20; ++t) {
      std::vector<double> lambda(inst.jobs.size());
      double scale = scales[t % 5];
      for (double& v : lambda) {
        double u = g.uniform();
        v = (u < 0.1) ? 0.0 : scale * u;  // mix in exact zeros
      }
      double dual = evaluate_dual(lambda, inst).value;
      worst = std::max(worst, dual / opt);
      ++checks;
      if (dual > opt + 1e-6 * (1.0 + opt))
        return {false, fmt("instance %d draw %d: dual %.9g exceeds optimum %.9g at scale %g",
                           i, t, dual, opt, scale)};
    }
  }
  return {true, fmt("%lld multiplier draws; max dual/OPT = %.9f (weak duality intact)",
                    checks, worst)};
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "fractional greedy certified within alpha^alpha of the offline optimum",
     c1_fractional_competitiveness},
    {2, "water-filling equalizes marginal rates at the job threshold", c2_waterfill_kkt},
    {3, "last toucher attains the per-machine dual argmax", c3_last_toucher_argmax},
    {4, "greedy speeds match the replanning reference on random deadline instances",
     c4_oa_equivalence},
    {5, "scalar inequality behind the integral bound holds under fuzzing",
     c5_inequality_fuzz},
    {6, "integral greedy certified and within its bound of the exact optimum",
     c6_integral_competitiveness},
    {7, "cost augmentation at most doubles the integral optimum", c7_augmentation_doubling},
    {8, "single-job split instance reproduces the fractional/integral gap", c8_split_gap},
    {9, "routing certificate below the optimum with slack shrinking in epsilon",
     c9_routing},
    {10, "randomized rounding is per-machine unbiased and seed-reproducible",
     c10_rounding},
    {11, "dual evaluations at arbitrary multipliers never exceed the optimum",
     c11_weak_duality},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (const Criterion& c : kCriteria) which.push_back(c.id);

  int failures = 0;
  for (int id : which) {
    const Criterion* found = nullptr;
    for (const Criterion& c : kCriteria)
      if (c.id == id) found = &c;
    if (!found) {
      std::printf("[%2d] FAIL unknown criterion\n", id);
      ++failures;
      continue;
    }
    Outcome out;
    try {
      out = found->run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%2d] %s %s: %s\n", id, out.pass ? "PASS" : "FAIL", found->name,
                out.details.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures;
}
