// stein.hpp - Stein operator for the clubbed binomial and the exact solution
// of its Stein equation.
//
// On L_{m,n} the operator is  (A f)(x) = alpha_x f(x + 2) - beta_x f(x),
// and for a target set A the Stein equation reads
//   (A f)(x) = 1_A(x) - pi(A),   f(m) = 0.
// With U_x = [0, x - 2] intersected with the lattice, the solution is
//   f_A(x) = [pi(U_x^c) pi(A n U_x) - pi(U_x) pi(A n U_x^c)] / (beta_x pi_x)
// for x > m.
#pragma once

#include "lightbulb/clubbed_binomial.hpp"
#include "lightbulb/parity_class.hpp"
#include "lightbulb/random.hpp"
#include "lightbulb/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace lightbulb {

/// f^m_A on the lattice, one exact value per lattice point.
class SteinSolution {
 public:
  SteinSolution(ParityClass parity, std::vector<int> target, std::vector<Rational> values)
      : parity_(parity), target_(std::move(target)), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != parity_.size())
      throw std::invalid_argument("SteinSolution: one value per lattice point required");
  }

  const ParityClass& parity() const { return parity_; }
  const std::vector<int>& target_set() const { return target_; }
  const std::vector<Rational>& values() const { return values_; }

  Rational operator()(int x) const {
    if (!parity_.contains(x))
      throw std::out_of_range("SteinSolution: " + std::to_string(x) + " is off the lattice");
    return values_[parity_.index_of(x)];
  }

  Rational sup_norm() const {
    Rational s = 0;
    for (const auto& v : values_) s = std::max(s, Rational(abs(v)));
    return s;
  }

  friend bool operator==(const SteinSolution& a, const SteinSolution& b) {
    return a.parity_ == b.parity_ && a.values_ == b.values_;
  }

 private:
  ParityClass parity_;
  std::vector<int> target_;
  std::vector<Rational> values_;
};

struct TailSplit {
  int x;
  Rational lower;  // pi(U_x)
  Rational upper;  // pi(U_x^c)
};

/// (A f)(x). f(x + 2) is not read when x + 2 > n; alpha_x vanishes there.
template <class F>
Rational stein_apply(const ParityClass& parity, const F& f, int x) {
  if (!parity.contains(x))
    throw std::invalid_argument("stein_apply: " + std::to_string(x) + " is not in L_{" +
                                std::to_string(parity.m()) + "," +
                                std::to_string(parity.n()) + "}");
  const BalanceCoefficients c{parity.n()};
  Rational out = -Rational(f(x)) * c.beta(x);
  if (x + 2 <= parity.n()) out += Rational(f(x + 2)) * c.alpha(x);
  return out;
}

/// Solver bound to one lattice; caches pi and the tail sums pi(U_x).
class SteinSolver {
 public:
  explicit SteinSolver(const ParityClass& parity) : pi_(parity), points_(parity.points()) {
    below_.reserve(points_.size());
    Rational acc = 0;
    for (int x : points_) {
      below_.push_back(acc);
      acc += pi_.mass(x);
    }
  }

  const ParityClass& parity() const { return pi_.parity(); }
  const ClubbedPmf& target_law() const { return pi_; }

  TailSplit tail_split(int x) const {
    require_lattice(x, "tail_split");
    const Rational& lo = below_[parity().index_of(x)];
    return {x, lo, 1 - lo};
  }

  /// f^m_r from the two-branch explicit formula.
  SteinSolution singleton(int r) const {
    require_lattice(r, "solve_singleton");
    const Rational pr = pi_.mass(r);
    std::vector<Rational> v(points_.size(), Rational(0));
    for (std::size_t k = 1; k < points_.size(); ++k) {
      const int x = points_[k];
      const Rational denom = pi_.mass(x) * BalanceCoefficients{parity().n()}.beta(x);
      if (x < r + 2)
        v[k] = -below_[k] * pr / denom;
      else
        v[k] = (1 - below_[k]) * pr / denom;
    }
    return SteinSolution(parity(), {r}, std::move(v));
  }

  /// f^m_A as the sum of singleton solutions.
  SteinSolution by_linearity(const std::vector<int>& target) const {
    const auto a = normalized(target);
    std::vector<Rational> v(points_.size(), Rational(0));
    for (int r : a) {
      const auto s = singleton(r);
      for (std::size_t k = 0; k < v.size(); ++k) v[k] += s.values()[k];
    }
    return SteinSolution(parity(), a, std::move(v));
  }

  /// f^m_A from the compact two-term form.
  SteinSolution compact(const std::vector<int>& target) const {
    const auto a = normalized(target);
    std::vector<char> in_a(points_.size(), 0);
    Rational pi_a = 0;
    for (int r : a) {
      in_a[parity().index_of(r)] = 1;
      pi_a += pi_.mass(r);
    }
    const BalanceCoefficients c{parity().n()};
    std::vector<Rational> v(points_.size(), Rational(0));
    Rational a_below = 0;  // pi(A n U_x)
    for (std::size_t k = 0; k < points_.size(); ++k) {
      const int x = points_[k];
      if (k > 0) {
        const Rational& lower = below_[k];
        v[k] = ((1 - lower) * a_below - lower * (pi_a - a_below)) / (pi_.mass(x) * c.beta(x));
      }
      if (in_a[k]) a_below += pi_.mass(x);
    }
    return SteinSolution(parity(), a, std::move(v));
  }

  /// Both routes, required to agree exactly.
  SteinSolution solve(const std::vector<int>& target) const {
    auto lin = by_linearity(target);
    auto cmp = compact(target);
    if (!(lin == cmp))
      throw std::logic_error("solve_set: linear and compact forms disagree");
    return lin;
  }

  /// max over the lattice of |(A f)(x) - (1_A(x) - pi(A))|.
  Rational max_abs_residual(const SteinSolution& f) const {
    if (!(f.parity() == parity()))
      throw std::invalid_argument("max_abs_residual: solution lives on another lattice");
    const auto& a = f.target_set();
    const Rational pi_a = pi_.mass_of(a);
    Rational worst = 0;
    for (int x : points_) {
      const bool hit = std::binary_search(a.begin(), a.end(), x);
      const Rational rhs = (hit ? Rational(1) : Rational(0)) - pi_a;
      worst = std::max(worst, Rational(abs(stein_apply(parity(), f, x) - rhs)));
    }
    return worst;
  }

  struct SupPoint {
    Rational value;
    int at;  // lattice point attaining it; m when the lattice has no x > m
  };

  /// max over lattice x > m of pi(U_x) pi(U_x^c) / (beta_x pi_x): the
  /// attainable supremum of |f^m_A(x)| over all A and x. Zero when the
  /// lattice has no point above m.
  SupPoint sharp_sup() const {
    const BalanceCoefficients c{parity().n()};
    SupPoint best{Rational(0), parity().m()};
    for (std::size_t k = 1; k < points_.size(); ++k) {
      const int x = points_[k];
      const Rational v = below_[k] * (1 - below_[k]) / (pi_.mass(x) * c.beta(x));
      if (v > best.value) best = {v, x};
    }
    return best;
  }

  Rational sharp_sup_bound() const { return sharp_sup().value; }

 private:
  void require_lattice(int x, const char* who) const {
    if (!parity().contains(x))
      throw std::invalid_argument(std::string(who) + ": " + std::to_string(x) +
                                  " is not in L_{" + std::to_string(parity().m()) + "," +
                                  std::to_string(parity().n()) + "}");
  }

  std::vector<int> normalized(std::vector<int> a) const {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    for (int r : a) require_lattice(r, "solve_set");
    return a;
  }

  ClubbedPmf pi_;
  std::vector<int> points_;
  std::vector<Rational> below_;
};

inline SteinSolution solve_singleton(const ParityClass& parity, int r) {
  return SteinSolver(parity).singleton(r);
}

inline SteinSolution solve_set(const ParityClass& parity, const std::vector<int>& target) {
  return SteinSolver(parity).solve(target);
}

inline Rational sharp_sup_bound(const ParityClass& parity) {
  if (parity.n() < 2) throw std::invalid_argument("sharp_sup_bound: n must be >= 2");
  return SteinSolver(parity).sharp_sup_bound();
}

/// `count` subsets of the lattice, each point kept with probability 1/2,
/// drawn from make_stream(seed, 0).
inline std::vector<std::vector<int>> random_lattice_subsets(const ParityClass& parity, int count,
                                                             std::uint64_t seed) {
  auto rng = make_stream(seed, 0);
  std::vector<std::vector<int>> sets(static_cast<std::size_t>(std::max(count, 0)));
  for (auto& s : sets)
    for (int x : parity.points())
      if (uniform_below(rng, 2) == 1) s.push_back(x);
  return sets;
}

/// 2.7314 / (sqrt(n) (n - 1)), nudged up one ulp so it never understates.
inline double lemma_bound(int n) {
  if (n < 2) throw std::invalid_argument("lemma_bound: n must be >= 2");
  const double v = 2.7314 / (std::sqrt(static_cast<double>(n)) * (n - 1));
  return std::nextafter(v, std::numeric_limits<double>::infinity());
}

/// Envelope for the generic lattice point; its maximum over n fixes 2.7314.
inline double g1(int n) {
  const double x = n;
  const double s = std::sqrt(x);
  const double q = 1.0 - (s + 3.0) / (x / 2.0 + 2.0 + s / 2.0);
  const double bracket = s / 4.0 + 1.0 + 1.0 / (1.0 - q * q);
  return bracket / ((x / 2.0 + 1.0) * (x / 2.0)) * s * (x - 1.0);
}

/// Envelope for the odd-n, m = 0, x = (n + 1)/2 point.
inline double g2(int n) {
  const double x = n;
  const double s = std::sqrt(x);
  const double bracket = s / 4.0 + 1.0 + (x + 3.0 + s) / (4.0 + 2.0 * s);
  return bracket / ((x / 2.0 + 1.0) * x) * (x - 1.0) * s;
}

}  // namespace lightbulb
