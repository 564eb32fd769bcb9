#include "nlpd/model.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace nlpd {

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Fractional: return "fractional";
    case Mode::Integer: return "integer";
    case Mode::Rounding: return "rounding";
  }
  return "?";
}

double effective_delta(double alpha, Mode mode) {
  if (!(alpha > 1.0))
    throw std::domain_error("effective_delta: alpha must exceed 1, got " + std::to_string(alpha));
  switch (mode) {
    case Mode::Integer:
      return std::pow(std::exp(1.0) * (alpha + 1.0), 1.0 - alpha);
    case Mode::Fractional:
    case Mode::Rounding:
      // Rounding pipelines round a fractional run, so they share its discount.
      return 1.0 / std::pow(alpha, alpha - 1.0);
  }
  return 1.0;
}

double Parameters::resolve_delta(double alpha) const {
  if (delta) {
    if (!(*delta > 0.0) || !(*delta <= 1.0))
      throw std::invalid_argument("Parameters.delta must lie in (0, 1], got " +
                                  std::to_string(*delta));
    return *delta;
  }
  return effective_delta(alpha, mode);
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  for (const auto& i : issues) {
    if (i.job >= 0)
      os << "job " << i.job << ": ";
    os << i.message << '\n';
  }
  return os.str();
}

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport rep;
  auto flag = [&rep](int job, std::string msg) {
    rep.issues.push_back({job, std::move(msg)});
  };

  if (!(inst.alpha > 1.0))
    flag(-1, "alpha must exceed 1, got " + std::to_string(inst.alpha));
  if (inst.machines < 0)
    flag(-1, "machine count must be nonnegative");

  for (int j = 0; j < static_cast<int>(inst.jobs.size()); ++j) {
    const JobSpec& job = inst.jobs[j];
    if (!(job.demand > 0.0))
      flag(j, "demand must be positive, got " + std::to_string(job.demand));
    if (job.options.empty())
      flag(j, "no allowed machines (infeasible)");
    std::set<int> seen;
    for (const MachineOption& opt : job.options) {
      if (opt.machine < 0 || opt.machine >= inst.machines)
        flag(j, "machine id " + std::to_string(opt.machine) + " out of range [0, " +
                    std::to_string(inst.machines) + ")");
      if (!(opt.load > 0.0))
        flag(j, "load on machine " + std::to_string(opt.machine) +
                    " must be strictly positive, got " + std::to_string(opt.load));
      if (!(opt.cost >= 0.0))
        flag(j, "cost on machine " + std::to_string(opt.machine) +
                    " must be nonnegative, got " + std::to_string(opt.cost));
      if (!seen.insert(opt.machine).second)
        flag(j, "duplicate option for machine " + std::to_string(opt.machine));
    }
  }
  return rep;
}

void require_valid(const Instance& inst) {
  ValidationReport rep = validate_instance(inst);
  if (!rep.ok())
    throw std::invalid_argument("invalid instance:\n" + rep.str());
}

AssignmentState make_empty_state(const Instance& inst) {
  AssignmentState st;
  st.x.resize(inst.jobs.size());
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
    st.x[j].assign(inst.jobs[j].options.size(), 0.0);
  st.loads.assign(inst.machines, 0.0);
  return st;
}

void apply_allocation(AssignmentState& st, const Instance& inst, int job,
                      const std::vector<double>& alloc) {
  const JobSpec& spec = inst.jobs[job];
  if (alloc.size() != spec.options.size())
    throw std::invalid_argument("apply_allocation: allocation size mismatch");
  for (std::size_t k = 0; k < alloc.size(); ++k) {
    st.x[job][k] += alloc[k];
    st.loads[spec.options[k].machine] += spec.options[k].load * alloc[k];
  }
}

std::vector<double> recompute_loads(const AssignmentState& st, const Instance& inst) {
  std::vector<double> loads(inst.machines, 0.0);
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
    for (std::size_t k = 0; k < st.x[j].size(); ++k)
      loads[inst.jobs[j].options[k].machine] += inst.jobs[j].options[k].load * st.x[j][k];
  return loads;
}

double load_cost(const AssignmentState& st, const Instance& inst) {
  double total = 0.0;
  for (double L : st.loads) total += std::pow(L, inst.alpha);
  return total;
}

double assign_cost(const AssignmentState& st, const Instance& inst) {
  double total = 0.0;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j)
    for (std::size_t k = 0; k < st.x[j].size(); ++k)
      total += inst.jobs[j].options[k].cost * st.x[j][k];
  return total;
}

double objective(const AssignmentState& st, const Instance& inst) {
  return load_cost(st, inst) + assign_cost(st, inst);
}

}  // namespace nlpd
