// rational.hpp - exact arithmetic primitives shared by every lightbulb module.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lightbulb {

/// Arbitrary-precision integer.
using BigInt = mpz_class;

/// Exact rational in canonical form (positive denominator, reduced).
/// GMP keeps results of arithmetic canonical; values built from a raw
/// numerator/denominator pair must go through make_rational().
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("make_rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return make_rational(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
}

/// C(n, k) by the multiplicative formula; zero outside 0 <= k <= n.
inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0) throw std::domain_error("binomial: n must be non-negative");
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= static_cast<unsigned long>(n - k + i);
    r /= static_cast<unsigned long>(i);  // exact: r is C(n-k+i, i) here
  }
  return r;
}

inline BigInt pow10(unsigned digits) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, digits);
  return p;
}

inline BigInt floor_of(const Rational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline BigInt ceil_of(const Rational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

/// Smallest multiple of 10^-digits that is >= q.
inline Rational round_up(const Rational& q, unsigned digits) {
  const BigInt scale = pow10(digits);
  return make_rational(ceil_of(q * scale), scale);
}

/// Lossless "num/den" rendering; integers keep the "/1".
inline std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Decimal rendering with exactly `digits` fractional digits, rounded half
/// away from zero.
inline std::string to_decimal_string(const Rational& q, unsigned digits) {
  const BigInt scale = pow10(digits);
  const Rational mag = abs(q) * scale + Rational(1, 2);
  std::string body = floor_of(mag).get_str();
  if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
  std::string out;
  if (sgn(q) < 0 && body.find_first_not_of('0') != std::string::npos) out.push_back('-');
  out.append(body, 0, body.size() - digits);
  if (digits > 0) {
    out.push_back('.');
    out.append(body, body.size() - digits, digits);
  }
  return out;
}

/// Exact value of a finite double, for comparisons that must not round.
inline Rational from_double(double d) {
  return Rational(d);
}

inline double to_double(const Rational& q) {
  return q.get_d();
}

}  // namespace lightbulb
