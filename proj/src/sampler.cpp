#include "rigid/sampler.hpp"

#include <cmath>
#include <functional>
#include <future>
#include <thread>

#include "rigid/error.hpp"

namespace rigid {

namespace {

struct TrialOutcome {
  bool degenerate = false;
  int count = 0;
};

TrialOutcome run_trial(const Graph& g, const HennebergSequence& seq, std::uint64_t trial_seed,
                       std::uint64_t range) {
  Rng rng(trial_seed);
  std::map<Edge, double> label;
  for (const Edge& e : g.edges)
    label[e] = (e == g.base) ? 1.0 : rng.unit() * static_cast<double>(range);

  std::vector<double> xs(g.n + 1, 0.0), ys(g.n + 1, 0.0);
  xs[g.base.second] = 1.0;

  TrialOutcome out;
  // DFS over sign choices; complex branch pairs (beta^2 < 0) prune.
  std::function<bool(std::size_t)> dfs = [&](std::size_t l) -> bool {
    if (l == seq.size()) {
      ++out.count;
      return true;
    }
    const HennebergMove& mv = seq[l];
    double dx = xs[mv.j] - xs[mv.i], dy = ys[mv.j] - ys[mv.i];
    double len2 = dx * dx + dy * dy;
    if (std::abs(len2) < kSamplerTolerance) {
      out.degenerate = true;
      return false;
    }
    double lam_in = label.at(make_edge(mv.i, mv.fresh));
    double lam_jn = label.at(make_edge(mv.j, mv.fresh));
    double alpha = (lam_in + len2 - lam_jn) / (2.0 * len2);
    double beta2 = lam_in / len2 - alpha * alpha;
    if (std::abs(beta2) < kSamplerTolerance) {
      out.degenerate = true;
      return false;
    }
    if (beta2 < 0) return true;  // complex pair; no real realizations below
    double beta = std::sqrt(beta2);
    for (int s : {+1, -1}) {
      xs[mv.fresh] = xs[mv.i] + alpha * dx - s * beta * dy;
      ys[mv.fresh] = ys[mv.i] + alpha * dy + s * beta * dx;
      if (!dfs(l + 1)) return false;
    }
    return true;
  };
  if (!dfs(0)) out.count = 0;
  return out;
}

}  // namespace

SampleReport sample_real_counts(const Graph& g, const HennebergSequence& seq,
                                const std::set<int>& spectrum, int trials, std::uint64_t seed,
                                std::uint64_t range) {
  if (trials <= 0) throw Error(ErrorKind::parse, "trials must be positive");
  SampleReport rep;
  rep.trials = trials;
  rep.spectrum.assign(spectrum.begin(), spectrum.end());

  auto trial_seed = [&](int t) {
    return seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(t + 1);
  };

  std::vector<TrialOutcome> outcomes(trials);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int per = std::max(1, (trials + static_cast<int>(hw) - 1) / static_cast<int>(hw));
  std::vector<std::future<void>> futs;
  for (int lo = 0; lo < trials; lo += per) {
    int hi = std::min(trials, lo + per);
    futs.push_back(std::async(std::launch::async, [&, lo, hi] {
      for (int t = lo; t < hi; ++t) outcomes[t] = run_trial(g, seq, trial_seed(t), range);
    }));
  }
  for (auto& f : futs) f.get();

  for (int t = 0; t < trials; ++t) {
    const TrialOutcome& o = outcomes[t];
    if (o.degenerate) {
      ++rep.degenerate_skipped;
      continue;
    }
    rep.histogram[o.count] += 1;
    if (!spectrum.count(o.count)) rep.violations.push_back({t, o.count});
  }
  return rep;
}

}  // namespace rigid
