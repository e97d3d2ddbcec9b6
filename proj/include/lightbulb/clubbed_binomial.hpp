// clubbed_binomial.hpp - the clubbed binomial law C_{m,n} and its balance
// coefficients.
#pragma once

#include "lightbulb/parity_class.hpp"
#include "lightbulb/pmf.hpp"
#include "lightbulb/rational.hpp"

#include <cstdint>
#include <vector>

namespace lightbulb {

/// Mass C(n, i) / 2^(n-1) on each i in L_{m,n}: two adjacent cells of
/// Bin(n - 1, 1/2) merged into one.
class ClubbedPmf {
 public:
  explicit ClubbedPmf(const ParityClass& parity)
      : parity_(parity), dist_(build(parity)) {}

  const ParityClass& parity() const { return parity_; }
  const Pmf& dist() const { return dist_; }

  /// pi^m_i; exactly zero off the lattice.
  Rational mass(int i) const { return dist_(i); }

  template <class Range>
  Rational mass_of(const Range& points) const {
    Rational s = 0;
    for (int x : points) s += mass(x);
    return s;
  }

 private:
  static Pmf build(const ParityClass& parity) {
    const int n = parity.n();
    BigInt half_scale = 1;
    half_scale <<= static_cast<unsigned>(n - 1);
    Pmf::MassMap mass;
    for (int i : parity.points()) mass.emplace(i, make_rational(binomial(n, i), half_scale));
    return Pmf(n, std::move(mass));
  }

  ParityClass parity_;
  Pmf dist_;
};

inline ClubbedPmf clubbed_pmf(int n, int m) {
  return ClubbedPmf(ParityClass(n, m));
}

/// The approximating law C_n, on the lattice that carries W_n.
inline ClubbedPmf theorem_target(int n) {
  return ClubbedPmf(parity_class_of(n));
}

/// alpha_x = (n - x)(n - 1 - x), beta_x = x(x - 1).
struct BalanceCoefficients {
  int n;

  std::int64_t alpha(int x) const {
    return static_cast<std::int64_t>(n - x) * (n - 1 - x);
  }
  std::int64_t beta(int x) const {
    return static_cast<std::int64_t>(x) * (x - 1);
  }
};

/// Checks alpha_{x-2} pi_{x-2} == beta_x pi_x at every lattice x >= 2.
inline bool verify_balance(const ClubbedPmf& pi) {
  const BalanceCoefficients c{pi.parity().n()};
  for (int x : pi.parity().points()) {
    if (x < 2) continue;
    const Rational lhs = pi.mass(x - 2) * c.alpha(x - 2);
    const Rational rhs = pi.mass(x) * c.beta(x);
    if (lhs != rhs) return false;
  }
  return true;
}

inline bool verify_balance(int n, int m) {
  return verify_balance(clubbed_pmf(n, m));
}

}  // namespace lightbulb
