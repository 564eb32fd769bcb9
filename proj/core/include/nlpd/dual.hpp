#pragma once

#include "nlpd/waterfill.hpp"

namespace nlpd {

struct MachineWitness {
  std::optional<int> phi;  // job with the best positive (lambda_j - c_je)/l_je, if any
  double xhat = 0.0;       // work level at which that job's term minimizes the machine dual
  std::optional<int> psi;  // online run's last job on this machine (when known)
};

struct DualCertificate {
  std::vector<double> lambda;
  double value = 0.0;
  std::vector<MachineWitness> witness;  // per machine
};

// Per-machine term of the dual objective: with phi(e) the job maximizing
// (lambda_j - c_je)/l_je over strictly positive values, the term is
// (1-alpha) * ((lambda_phi - c_phi,e) / (alpha * l_phi,e))^(alpha/(alpha-1)),
// and zero (no witness) when no job is strictly positive.
MachineWitness machine_dual_contribution(int machine, const std::vector<double>& lambda,
                                         const Instance& inst, double* contribution);

// Lagrangian dual objective: sum_j lambda_j * demand_j + sum_e machine term.
// Weak duality: for any lambda >= 0 this never exceeds the fractional optimum.
DualCertificate evaluate_dual(const std::vector<double>& lambda, const Instance& inst);

struct CertificateReport {
  double on = 0.0;     // online objective
  double dual = 0.0;   // dual objective at the run's thresholds
  double ratio = 0.0;  // on / dual (0 when on == 0)
  double bound = 0.0;  // guaranteed competitive factor
  bool certified = false;
  bool psi_check = false;   // last-toucher attains the per-machine argmax
  bool informative = true;  // false when dual <= 0 with on > 0
};

// Checks the run's thresholds as a dual certificate: certified iff
// on <= alpha^alpha * dual (up to 1e-9 relative slack), and verifies that on
// every touched machine the last job to place work attains the argmax ratio
// within 1e-7 relative.
CertificateReport certify_run(const FractionalRun& run, const Instance& inst);

}  // namespace nlpd
