#pragma once

#include "nlpd/dual.hpp"

namespace nlpd {

// Adds l_je^alpha to every option's cost. Run the integral greedy on the result:
// the integral optimum of the augmented instance is at most twice the original
// one, and the augmentation makes the greedy's thresholds a usable certificate.
Instance augmented_instance(const Instance& inst);

struct IntegerRun {
  AssignmentState state;      // whole demand of each job on one option
  std::vector<double> lambda; // per job: the minimized marginal
  std::vector<int> choice;    // per job: index into its option list
};

// Assigns each job in order to the machine minimizing
// delta * alpha * l_je * (load before this job)^(alpha-1) + c_je,
// ties toward the lowest machine id. Expects the augmented instance.
IntegerRun greedy_assign_integer(const Instance& inst, const Parameters& params = {
                                     .mode = Mode::Integer, .delta = std::nullopt});

// Certifies the integral run against the dual at its thresholds with bound
// e * (e*(alpha+1))^alpha.
CertificateReport integer_dual_bound(const IntegerRun& run, const Instance& inst);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

// The scalar inequality behind the integral bound: for a_0..a_{T-1} >= 0,
//   alpha*delta * sum_j a_j (sum_{i<j} a_i)^(alpha-1) + sum_j a_j^alpha
//     + (1-alpha) * delta^(alpha/(alpha-1)) * (sum_j a_j)^alpha
//   >= (sum_j a_j)^alpha / (e * (e*(alpha+1))^alpha),
// checked with 1e-12 relative slack. delta defaults to (e*(alpha+1))^(1-alpha).
InequalityCheck check_key_inequality(const std::vector<double>& seq, double alpha,
                                     std::optional<double> delta = std::nullopt);

}  // namespace nlpd
