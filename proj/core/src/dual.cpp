#include "nlpd/dual.hpp"

#include <cmath>
#include <limits>

namespace nlpd {

namespace {

struct Candidate {
  int job;
  double load;
  double cost;
};

// Shared kernel: given all jobs allowed on one machine, find the best strictly
// positive ratio (lambda_j - c) / l and the value of the machine's dual term.
MachineWitness best_candidate(const std::vector<Candidate>& cands,
                              const std::vector<double>& lambda, double alpha,
                              double* contribution) {
  MachineWitness w;
  double best_ratio = 0.0;
  double best_num = 0.0, best_load = 0.0;
  for (const Candidate& c : cands) {
    double num = lambda[c.job] - c.cost;
    if (num <= 0.0) continue;
    double ratio = num / c.load;
    if (!w.phi || ratio > best_ratio) {
      w.phi = c.job;
      best_ratio = ratio;
      best_num = num;
      best_load = c.load;
    }
  }
  if (!w.phi) {
    if (contribution) *contribution = 0.0;
    return w;
  }
  // Unconstrained minimizer of (l*x)^alpha - (lambda - c) * x over x >= 0.
  double scaled = best_num / (alpha * best_load);
  w.xhat = std::pow(scaled, 1.0 / (alpha - 1.0)) / best_load;
  if (contribution) *contribution = (1.0 - alpha) * std::pow(scaled, alpha / (alpha - 1.0));
  return w;
}

std::vector<std::vector<Candidate>> adjacency(const Instance& inst) {
  std::vector<std::vector<Candidate>> by_machine(inst.machines);
  for (int j = 0; j < static_cast<int>(inst.jobs.size()); ++j)
    for (const MachineOption& opt : inst.jobs[j].options)
      by_machine[opt.machine].push_back({j, opt.load, opt.cost});
  return by_machine;
}

void check_lambda(const std::vector<double>& lambda, const Instance& inst) {
  if (lambda.size() != inst.jobs.size())
    throw std::invalid_argument("dual: lambda size does not match job count");
  for (double v : lambda)
    if (!(v >= 0.0)) throw std::invalid_argument("dual: lambda must be nonnegative");
}

}  // namespace

MachineWitness machine_dual_contribution(int machine, const std::vector<double>& lambda,
                                         const Instance& inst, double* contribution) {
  check_lambda(lambda, inst);
  if (machine < 0 || machine >= inst.machines)
    throw std::invalid_argument("machine_dual_contribution: machine id out of range");
  std::vector<Candidate> cands;
  for (int j = 0; j < static_cast<int>(inst.jobs.size()); ++j)
    for (const MachineOption& opt : inst.jobs[j].options)
      if (opt.machine == machine) cands.push_back({j, opt.load, opt.cost});
  return best_candidate(cands, lambda, inst.alpha, contribution);
}

DualCertificate evaluate_dual(const std::vector<double>& lambda, const Instance& inst) {
  check_lambda(lambda, inst);
  DualCertificate cert;
  cert.lambda = lambda;
  cert.witness.resize(inst.machines);

  double value = 0.0;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) value += lambda[j] * inst.jobs[j].demand;

  auto by_machine = adjacency(inst);
  for (int e = 0; e < inst.machines; ++e) {
    double contribution = 0.0;
    cert.witness[e] = best_candidate(by_machine[e], lambda, inst.alpha, &contribution);
    value += contribution;
  }
  cert.value = value;
  return cert;
}

CertificateReport certify_run(const FractionalRun& run, const Instance& inst) {
  CertificateReport rep;
  rep.on = objective(run.state, inst);
  rep.bound = std::pow(inst.alpha, inst.alpha);

  DualCertificate cert = evaluate_dual(run.lambda, inst);
  rep.dual = cert.value;

  if (rep.on == 0.0) {
    rep.ratio = 0.0;
    rep.certified = true;
  } else if (rep.dual <= 0.0) {
    rep.ratio = std::numeric_limits<double>::infinity();
    rep.certified = false;
    rep.informative = false;
  } else {
    rep.ratio = rep.on / rep.dual;
    rep.certified = rep.on <= rep.bound * rep.dual * (1.0 + 1e-9);
  }

  // Last-toucher check: on every machine that received work, the final job to
  // place work there must attain the machine's best ratio (within 1e-7 rel).
  rep.psi_check = true;
  auto by_machine = adjacency(inst);
  for (int e = 0; e < inst.machines; ++e) {
    if (!run.last_job[e]) continue;
    int psi = *run.last_job[e];
    double best = 0.0;
    bool any = false;
    double psi_ratio = 0.0;
    for (const Candidate& c : by_machine[e]) {
      double ratio = (run.lambda[c.job] - c.cost) / c.load;
      if (!any || ratio > best) {
        best = ratio;
        any = true;
      }
      if (c.job == psi) psi_ratio = ratio;
    }
    if (!any || std::abs(psi_ratio - best) > 1e-7 * std::abs(best) + 1e-15)
      rep.psi_check = false;
  }
  return rep;
}

}  // namespace nlpd
