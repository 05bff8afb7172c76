#ifndef RIGID_SAMPLER_HPP
#define RIGID_SAMPLER_HPP

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "rigid/graph.hpp"

namespace rigid {

// Near-degenerate trials (|beta^2| or the base-pair distance under this
// bound) are skipped rather than sign-forced.
inline constexpr double kSamplerTolerance = 1e-9;

struct SampleReport {
  int trials = 0;
  std::map<int, int> histogram;  // real-realization count -> #trials
  int degenerate_skipped = 0;
  std::vector<int> spectrum;  // predicted, sorted

  struct Violation {
    int trial;
    int count;
  };
  std::vector<Violation> violations;  // counts outside the spectrum
};

// Floating-point sampler: per trial draws real labels (base edge 1, others
// uniform in (0, range]), counts real realizations by DFS keeping branches
// with beta^2 >= tolerance, and checks every count against the predicted
// spectrum. Trials are independent (per-trial RNG streams derived from the
// seed) and run in parallel; assembly is by trial index.
SampleReport sample_real_counts(const Graph& g, const HennebergSequence& seq,
                                const std::set<int>& spectrum, int trials, std::uint64_t seed,
                                std::uint64_t range);

}  // namespace rigid

#endif
