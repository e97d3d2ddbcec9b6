// tv_verify.hpp - exact total-variation distance between W_n and C_n
// against the exponential bound, plus the pair-collision probability that
// drives it.
#pragma once

#include "lightbulb/clubbed_binomial.hpp"
#include "lightbulb/lightbulb_exact.hpp"
#include "lightbulb/parity_class.hpp"
#include "lightbulb/pmf.hpp"
#include "lightbulb/rational.hpp"
#include "lightbulb/stein.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lightbulb {

/// Exact values are rounded up to this many decimals before any comparison
/// against a floating-point bound.
inline constexpr unsigned kComparisonDigits = 15;

inline constexpr double kTheoremConstant = 2.7314;

/// 2.7314 sqrt(n) exp(-(n + 1)/3).
inline double theorem_bound(int n) {
  if (n < 1) throw std::invalid_argument("theorem_bound: n must be >= 1");
  return kTheoremConstant * std::sqrt(static_cast<double>(n)) * std::exp(-(n + 1) / 3.0);
}

inline double collision_bound(int n) {
  return std::exp(-(n + 1) / 3.0);
}

/// P(two given bulbs receive identical switch variables at every stage)
///   = prod_{r=1..n} [r(r-1) + (n-r)(n-1-r)] / (n(n-1)).
inline Rational collision_probability(int n) {
  if (n < 2) throw std::invalid_argument("collision_probability: n must be >= 2");
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1);
  Rational p = 1;
  for (std::int64_t r = 1; r <= n; ++r) {
    const std::int64_t same = r * (r - 1) + (n - r) * (n - 1 - r);
    p *= make_rational(same, pairs);
  }
  return p;
}

/// (2 / (n(n-1))) sum_{r=1..n} (nr - r^2) == (n + 1)/3, checked exactly.
inline bool exponent_identity(int n) {
  if (n < 2) throw std::invalid_argument("exponent_identity: n must be >= 2");
  BigInt sum = 0;
  for (long r = 1; r <= n; ++r) sum += static_cast<long>(n) * r - r * r;
  const Rational lhs = make_rational(BigInt(2) * sum, BigInt(n) * (n - 1));
  return lhs == make_rational(n + 1, 3);
}

/// Exact q <= floating bound, with q first rounded up at 1e-15.
inline bool rounded_up_at_most(const Rational& q, double bound) {
  return round_up(q, kComparisonDigits) <= from_double(bound);
}

inline bool rounded_up_below(const Rational& q, const Rational& limit) {
  return round_up(q, kComparisonDigits) < limit;
}

struct ReportRow {
  int n = 0;
  int m = 0;
  Rational tv_exact;
  double tv_float = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  std::optional<Rational> sharp_stein_norm;  // n >= 2
  std::optional<Rational> collision_prob;    // n >= 2
  double collision_bound = 0.0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// Every check is recorded in `failures`; nothing is clamped or thrown.
inline ReportRow verify_theorem(int n) {
  if (n < 1) throw std::invalid_argument("verify_theorem: n must be >= 1");
  ReportRow row;
  row.n = n;
  const ParityClass parity = parity_class_of(n);
  row.m = parity.m();

  const Pmf w = exact_terminal_pmf(n);
  const ClubbedPmf c(parity);
  row.tv_exact = tv_distance(w, c.dist());
  row.tv_float = to_double(row.tv_exact);
  row.bound = theorem_bound(n);
  row.ratio = row.tv_float / row.bound;
  row.collision_bound = collision_bound(n);

  if (!rounded_up_at_most(row.tv_exact, row.bound)) row.failures.push_back("tv_bound");
  if (n >= 21 && !rounded_up_below(row.tv_exact, Rational(1, 100)))
    row.failures.push_back("tv_below_1_percent");
  if (n >= 28 && !rounded_up_below(row.tv_exact, Rational(1, 1000)))
    row.failures.push_back("tv_below_0.1_percent");

  if (n >= 2) {
    row.sharp_stein_norm = SteinSolver(parity).sharp_sup_bound();
    if (!(*row.sharp_stein_norm <= from_double(lemma_bound(n))))
      row.failures.push_back("stein_norm_bound");
    row.collision_prob = collision_probability(n);
    // Bound rounded down one ulp so a rounding error in exp() cannot pass.
    const double lo = std::nextafter(row.collision_bound, 0.0);
    if (!(*row.collision_prob <= from_double(lo))) row.failures.push_back("collision_bound");
  }
  return row;
}

/// Rows for n = 1..n_max in order; failing rows are kept and flagged.
inline std::vector<ReportRow> build_report(int n_max) {
  if (n_max < 1) throw std::invalid_argument("build_report: n_max must be >= 1");
  std::vector<ReportRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) rows.push_back(verify_theorem(n));
  return rows;
}

}  // namespace lightbulb
