// parity_class.hpp - the parity lattice L_{m,n} = {i in 0..n : i = m mod 2}.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lightbulb {

class ParityClass {
 public:
  ParityClass(int n, int m) : n_(n), m_(m) {
    if (n < 1) throw std::invalid_argument("ParityClass: n must be >= 1");
    if (m != 0 && m != 1)
      throw std::invalid_argument("ParityClass: m must be 0 or 1, got " + std::to_string(m));
  }

  int n() const { return n_; }
  int m() const { return m_; }

  bool contains(int x) const { return x >= 0 && x <= n_ && (x & 1) == m_; }

  /// Lattice points in increasing order.
  std::vector<int> points() const {
    std::vector<int> pts;
    for (int x = m_; x <= n_; x += 2) pts.push_back(x);
    return pts;
  }

  /// Position of a lattice point within points().
  int index_of(int x) const { return (x - m_) / 2; }
  int size() const { return (n_ - m_) / 2 + 1; }

  friend bool operator==(const ParityClass&, const ParityClass&) = default;

 private:
  int n_;
  int m_;
};

/// Parity of the terminal on-count: the parity of 1 + 2 + ... + n, which is
/// even exactly when n mod 4 is 0 or 3.
inline ParityClass parity_class_of(int n) {
  if (n < 1) throw std::invalid_argument("parity_class_of: n must be >= 1");
  const int r = n % 4;
  return ParityClass(n, (r == 0 || r == 3) ? 0 : 1);
}

}  // namespace lightbulb
