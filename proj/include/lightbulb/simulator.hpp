// simulator.hpp - seeded Monte Carlo of the lightbulb process at the level
// of individual bulbs. Batch b of a run uses make_stream(seed, b).
#pragma once

#include "lightbulb/parity_class.hpp"
#include "lightbulb/pmf.hpp"
#include "lightbulb/random.hpp"
#include "lightbulb/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

namespace lightbulb {

struct SimConfig {
  int n = 1;
  std::uint64_t reps = 1;
  std::uint64_t seed = 0;
  unsigned batches = 1;

  void validate() const {
    if (n < 1) throw std::invalid_argument("SimConfig: n must be >= 1");
    if (reps < 1) throw std::invalid_argument("SimConfig: reps must be >= 1");
    if (batches < 1) throw std::invalid_argument("SimConfig: batches must be >= 1");
    if (batches > reps) throw std::invalid_argument("SimConfig: batches must not exceed reps");
  }
};

struct SimResult {
  int n = 0;
  std::map<int, std::uint64_t> empirical;
  std::uint64_t reps = 0;
  std::uint64_t parity_violations = 0;

  friend bool operator==(const SimResult&, const SimResult&) = default;
};

/// Reusable state for repeated draws of W_n.
class LightbulbSampler {
 public:
  explicit LightbulbSampler(int n) : n_(n), index_(n), on_(n) {
    if (n < 1) throw std::invalid_argument("LightbulbSampler: n must be >= 1");
  }

  /// Stage r toggles the first r entries of a partial Fisher-Yates shuffle
  /// of the index array. The array is not reset between stages; any
  /// starting permutation gives a uniform r-subset.
  template <class Engine>
  int operator()(Engine& rng) {
    std::iota(index_.begin(), index_.end(), 0);
    std::fill(on_.begin(), on_.end(), 0);
    for (int r = 1; r <= n_; ++r) {
      for (int i = 0; i < r; ++i) {
        const auto j = i + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n_ - i)));
        std::swap(index_[i], index_[j]);
        on_[index_[i]] ^= 1;
      }
    }
    int count = 0;
    for (char b : on_) count += b;
    return count;
  }

 private:
  int n_;
  std::vector<int> index_;
  std::vector<char> on_;
};

template <class Engine>
int sample_once(int n, Engine& rng) {
  LightbulbSampler s(n);
  return s(rng);
}

/// Batches run on their own threads and are folded in batch order, so the
/// result depends only on the config.
inline SimResult run(const SimConfig& config) {
  config.validate();
  const ParityClass parity = parity_class_of(config.n);
  std::vector<SimResult> partial(config.batches);

  auto work = [&](unsigned b) {
    const std::uint64_t share =
        config.reps / config.batches + (b < config.reps % config.batches ? 1 : 0);
    auto rng = make_stream(config.seed, b);
    LightbulbSampler sampler(config.n);
    SimResult& out = partial[b];
    out.n = config.n;
    for (std::uint64_t i = 0; i < share; ++i) {
      const int w = sampler(rng);
      ++out.empirical[w];
      if (!parity.contains(w)) ++out.parity_violations;
    }
    out.reps = share;
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(config.batches);
    for (unsigned b = 0; b < config.batches; ++b) pool.emplace_back(work, b);
  }

  SimResult total;
  total.n = config.n;
  for (const auto& p : partial) {
    for (const auto& [w, c] : p.empirical) total.empirical[w] += c;
    total.reps += p.reps;
    total.parity_violations += p.parity_violations;
  }
  return total;
}

/// TV between empirical frequencies and a reference law (as doubles).
inline double empirical_tv(const SimResult& result, const Pmf& reference) {
  if (result.reps == 0) throw std::invalid_argument("empirical_tv: empty result");
  const double reps = static_cast<double>(result.reps);
  double acc = 0.0;
  for (const auto& [w, c] : result.empirical)
    acc += std::abs(static_cast<double>(c) / reps - to_double(reference(w)));
  for (const auto& [w, p] : reference.masses())
    if (!result.empirical.contains(w)) acc += to_double(p);
  return acc / 2.0;
}

}  // namespace lightbulb
