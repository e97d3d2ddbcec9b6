// pmf.hpp - finite probability mass functions with exact masses.
#pragma once

#include "lightbulb/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lightbulb {

/// Probability mass function on a subset of {0, ..., n}.
///
/// Only strictly positive masses are stored and the masses sum to exactly 1;
/// the constructor enforces both, so every Pmf in circulation is valid.
class Pmf {
 public:
  using MassMap = std::map<int, Rational>;

  Pmf(int n, MassMap mass) : n_(n) {
    if (n < 0) throw std::invalid_argument("Pmf: n must be non-negative");
    Rational total = 0;
    for (auto& [point, p] : mass) {
      if (point < 0 || point > n)
        throw std::invalid_argument("Pmf: support point " + std::to_string(point) +
                                    " outside {0.." + std::to_string(n) + "}");
      if (sgn(p) < 0) throw std::invalid_argument("Pmf: negative mass");
      if (sgn(p) == 0) continue;
      total += p;
      mass_.emplace(point, p);
    }
    if (total != 1)
      throw std::invalid_argument("Pmf: masses sum to " + to_fraction_string(total) +
                                  ", not 1");
  }

  /// Dense construction; index i carries the mass of point i.
  static Pmf from_dense(int n, const std::vector<Rational>& dense) {
    MassMap m;
    for (std::size_t i = 0; i < dense.size(); ++i)
      if (sgn(dense[i]) != 0) m.emplace(static_cast<int>(i), dense[i]);
    return Pmf(n, std::move(m));
  }

  static Pmf point_mass(int n, int at) { return Pmf(n, {{at, Rational(1)}}); }

  int n() const { return n_; }
  const MassMap& masses() const { return mass_; }
  std::size_t support_size() const { return mass_.size(); }

  /// Mass at `point`; zero off the support.
  Rational operator()(int point) const {
    auto it = mass_.find(point);
    return it == mass_.end() ? Rational(0) : it->second;
  }

  std::vector<int> support() const {
    std::vector<int> s;
    s.reserve(mass_.size());
    for (const auto& kv : mass_) s.push_back(kv.first);
    return s;
  }

  friend bool operator==(const Pmf& a, const Pmf& b) {
    return a.n_ == b.n_ && a.mass_ == b.mass_;
  }

 private:
  int n_;
  MassMap mass_;
};

/// Half the L1 distance, which for laws on the integers equals the
/// supremum over events of |P(A) - Q(A)|.
inline Rational tv_distance(const Pmf& p, const Pmf& q) {
  Rational acc = 0;
  auto a = p.masses().begin(), ae = p.masses().end();
  auto b = q.masses().begin(), be = q.masses().end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->first < b->first)) {
      acc += a->second;
      ++a;
    } else if (a == ae || b->first < a->first) {
      acc += b->second;
      ++b;
    } else {
      acc += abs(a->second - b->second);
      ++a;
      ++b;
    }
  }
  return acc / 2;
}

struct Moments {
  Rational mean;
  Rational variance;
};

inline Moments pmf_mean_var(const Pmf& p) {
  Rational s1 = 0, s2 = 0;
  for (const auto& [i, w] : p.masses()) {
    s1 += w * i;
    s2 += w * i * i;
  }
  return {s1, s2 - s1 * s1};
}

}  // namespace lightbulb
