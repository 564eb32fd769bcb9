#include "nlpd/rounding.hpp"

#include <cmath>
#include <sstream>

namespace nlpd {

namespace {

void check_rows(const AssignmentState& frac, const Instance& inst) {
  if (frac.x.size() != inst.jobs.size())
    throw std::invalid_argument("round_assignment: state does not match instance");
  for (std::size_t j = 0; j < frac.x.size(); ++j) {
    double row = 0.0;
    for (double v : frac.x[j]) {
      if (!(v >= 0.0)) throw std::invalid_argument("round_assignment: negative weight");
      row += v;
    }
    if (std::abs(row - 1.0) > 1e-6) {
      std::ostringstream os;
      os << "round_assignment: job " << j << " row sums to " << row
         << "; independent rounding requires unit demands";
      throw std::invalid_argument(os.str());
    }
  }
}

RoundedSample draw(const AssignmentState& frac, const Instance& inst, rng::SplitMix64& gen) {
  RoundedSample s;
  s.choice.resize(inst.jobs.size());
  std::vector<double> loads(inst.machines, 0.0);
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    double u = gen.uniform();
    double cum = 0.0;
    int pick = static_cast<int>(frac.x[j].size()) - 1;  // guard against row sum < 1
    for (std::size_t k = 0; k < frac.x[j].size(); ++k) {
      cum += frac.x[j][k];
      if (u < cum) {
        pick = static_cast<int>(k);
        break;
      }
    }
    s.choice[j] = pick;
    const MachineOption& opt = inst.jobs[j].options[pick];
    loads[opt.machine] += opt.load;
  }
  for (double L : loads) s.load_cost += std::pow(L, inst.alpha);
  return s;
}

}  // namespace

RoundedSample round_assignment(const AssignmentState& frac, const Instance& inst,
                               std::uint64_t seed) {
  check_rows(frac, inst);
  rng::SplitMix64 gen(seed);
  return draw(frac, inst, gen);
}

MonteCarloStats monte_carlo_cost(const AssignmentState& frac, const Instance& inst,
                                 std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("monte_carlo_cost: need at least one sample");
  check_rows(frac, inst);

  MonteCarloStats st;
  st.samples = samples;
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    rng::SplitMix64 gen(rng::derive(seed, i));
    double c = draw(frac, inst, gen).load_cost;
    sum += c;
    sumsq += c * c;
  }
  st.mean = sum / static_cast<double>(samples);
  if (samples > 1) {
    double var = (sumsq - sum * st.mean) / static_cast<double>(samples - 1);
    st.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(samples));
  }

  // Moment-inequality monitoring threshold, not a guarantee to assert on.
  double k_alpha = inst.alpha / std::max(1.0, std::log(inst.alpha));
  st.threshold = std::pow(2.0 * k_alpha, inst.alpha);
  AssignmentState copy = frac;
  copy.loads = recompute_loads(frac, inst);
  double frac_obj = objective(copy, inst);
  st.ratio = frac_obj > 0.0 ? st.mean / frac_obj : 0.0;
  st.flagged = st.ratio > st.threshold;
  return st;
}

}  // namespace nlpd
