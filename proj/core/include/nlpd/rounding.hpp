#pragma once

#include <cstdint>

#include "nlpd/model.hpp"

namespace nlpd {

struct RoundedSample {
  std::vector<int> choice;  // per job: option index drawn
  double load_cost = 0.0;   // sum_e load_e^alpha of the rounded assignment
};

// Draws one integral assignment: each job independently picks an option with
// probability x[j][k] (its row must sum to 1 within 1e-6, i.e. unit demand).
// Bit-reproducible for a given seed across platforms.
RoundedSample round_assignment(const AssignmentState& frac, const Instance& inst,
                               std::uint64_t seed);

struct MonteCarloStats {
  double mean = 0.0;       // Monte-Carlo mean of the rounded load cost
  double std_error = 0.0;  // sample stderr of that mean
  double ratio = 0.0;      // mean / fractional objective (loads + costs)
  double threshold = 0.0;  // (2K)^alpha with K = alpha / max(1, ln alpha)
  bool flagged = false;    // ratio exceeded the threshold (monitoring only)
  std::size_t samples = 0;
};

// Repeated rounding; sample i uses an independent stream derived from
// (seed, i), so any sample can be reproduced in isolation.
MonteCarloStats monte_carlo_cost(const AssignmentState& frac, const Instance& inst,
                                 std::size_t samples, std::uint64_t seed);

namespace rng {
// SplitMix64: tiny, portable, and well distributed; used to derive independent
// sub-seeds and as the generator driving reproducible draws.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // uniform in [0, 1) with 53 random bits; platform-independent
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (0xA0761D6478BD642Full * (index + 1)));
  return g.next();
}
}  // namespace rng

}  // namespace nlpd
