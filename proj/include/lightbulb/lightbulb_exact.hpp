// lightbulb_exact.hpp - exact law of the on-count, stage by stage.
//
// Stage r toggles a uniform r-subset of the n bulbs. Only the on-count w
// matters: the number j of currently-on bulbs in the subset is
// hypergeometric, C(w, j) C(n - w, r - j) / C(n, r), and the count moves
// to w + r - 2j.
#pragma once

#include "lightbulb/parity_class.hpp"
#include "lightbulb/pmf.hpp"
#include "lightbulb/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace lightbulb {

struct StageDistribution {
  int n;
  int stage;
  Pmf dist;
};

inline StageDistribution initial_stage(int n) {
  if (n < 1) throw std::invalid_argument("initial_stage: n must be >= 1");
  return {n, 0, Pmf::point_mass(n, 0)};
}

inline StageDistribution stage_transition(const StageDistribution& d) {
  const int n = d.n;
  const int r = d.stage + 1;
  if (d.stage < 0 || d.stage >= n)
    throw std::invalid_argument("stage_transition: stage " + std::to_string(d.stage) +
                                " has no successor for n = " + std::to_string(n));

  // choose[a][b] = C(a, b) for a <= n.
  std::vector<std::vector<BigInt>> choose(n + 1);
  for (int a = 0; a <= n; ++a) {
    choose[a].resize(a + 1);
    choose[a][0] = choose[a][a] = 1;
    for (int b = 1; b < a; ++b) choose[a][b] = choose[a - 1][b - 1] + choose[a - 1][b];
  }
  const BigInt& total = choose[n][r];

  std::vector<Rational> next(n + 1, Rational(0));
  for (const auto& [w, p] : d.dist.masses()) {
    const int lo = std::max(0, r - (n - w));
    const int hi = std::min(w, r);
    for (int j = lo; j <= hi; ++j) {
      const BigInt ways = choose[w][j] * choose[n - w][r - j];
      next[w + r - 2 * j] += p * make_rational(ways, total);
    }
  }
  return {n, r, Pmf::from_dense(n, next)};
}

/// Stages 0..n in order.
inline std::vector<StageDistribution> exact_stages(int n) {
  std::vector<StageDistribution> stages;
  stages.reserve(static_cast<std::size_t>(n) + 1);
  stages.push_back(initial_stage(n));
  for (int r = 1; r <= n; ++r) stages.push_back(stage_transition(stages.back()));
  return stages;
}

/// Law of W_n, the number of bulbs on after stage n.
inline Pmf exact_terminal_pmf(int n) {
  if (n < 1) throw std::invalid_argument("exact_terminal_pmf: n must be >= 1");
  StageDistribution s = initial_stage(n);
  for (int r = 1; r <= n; ++r) s = stage_transition(s);
  return s.dist;
}

}  // namespace lightbulb
