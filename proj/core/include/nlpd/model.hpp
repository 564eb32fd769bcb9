#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlpd {

// One permitted (job, machine) pairing. Machines a job may not use are simply
// absent from its option list; loads must be strictly positive, costs nonnegative.
struct MachineOption {
  int machine = 0;
  double load = 1.0;  // per unit of assigned work
  double cost = 0.0;  // per unit of assigned work
};

struct JobSpec {
  double demand = 1.0;  // total work the job must place (> 0)
  std::vector<MachineOption> options;
};

// Assignment instance: minimize sum_e (load_e)^alpha + sum assignment costs,
// subject to each job placing its full demand across its allowed machines.
struct Instance {
  double alpha = 2.0;  // exponent of the load cost, > 1
  int machines = 0;
  std::vector<JobSpec> jobs;
};

enum class Mode { Fractional, Integer, Rounding };

const char* mode_name(Mode m);

// Default marginal discount for the greedy rule. Fractional mode uses
// 1/alpha^(alpha-1) (which yields the alpha^alpha guarantee); integer mode uses
// (e*(alpha+1))^(1-alpha). Throws std::domain_error if alpha <= 1.
double effective_delta(double alpha, Mode mode);

struct Parameters {
  Mode mode = Mode::Fractional;
  std::optional<double> delta;  // explicit override, must lie in (0, 1]

  // Resolves the discount actually used: the override when present (validated),
  // otherwise the mode default for this alpha.
  double resolve_delta(double alpha) const;
};

struct ValidationIssue {
  int job = -1;  // -1 flags an instance-level problem
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string str() const;
};

// Collects every violation (never throws): alpha <= 1, machine ids out of range,
// nonpositive loads or demands, negative costs, jobs with no options, duplicate
// machine ids within one job's option list.
ValidationReport validate_instance(const Instance& inst);

// Throws std::invalid_argument with the full report text if validation fails.
void require_valid(const Instance& inst);

// Work placement. x[j][k] is the work of job j on jobs[j].options[k], in the
// same units as demand: fractional rows sum to the demand; integral rows put
// the whole demand on a single option.
struct AssignmentState {
  std::vector<std::vector<double>> x;
  std::vector<double> loads;  // per machine: sum_j load_jk * x[j][k]
};

AssignmentState make_empty_state(const Instance& inst);

// Adds `alloc` (aligned with jobs[job].options) to the state and the loads.
void apply_allocation(AssignmentState& st, const Instance& inst, int job,
                      const std::vector<double>& alloc);

// Recomputes loads from x; used to bound drift of the incrementally kept loads.
std::vector<double> recompute_loads(const AssignmentState& st, const Instance& inst);

double load_cost(const AssignmentState& st, const Instance& inst);
double assign_cost(const AssignmentState& st, const Instance& inst);
double objective(const AssignmentState& st, const Instance& inst);

// Raised when an iterative solver fails to converge; carries diagnostics.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nlpd
