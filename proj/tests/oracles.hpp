#pragma once

// Independent reference computations used only by the tests. None of these
// share code paths with the library routines they check.

#include <cstdint>
#include <utility>
#include <vector>

#include "emcf/bigint.hpp"

namespace oracle {

using emcf::BigInt;
using emcf::Rational;

// floor(2^bits * log 2) from log 2 = sum_{n>=1} 1 / (n 2^n), in fixed point.
// Each term is truncated, so the result is low by at most `terms` units;
// the caller gets [value, value + terms + 1].
inline std::pair<BigInt, BigInt> log2_fixed(std::size_t bits) {
  const std::size_t guard = 32;
  const std::size_t total = bits + guard;
  const BigInt one = BigInt(1) << total;
  BigInt sum = 0;
  std::size_t n = 1;
  for (; n <= total; ++n) sum += (one >> n) / n;
  // Tail sum_{n > total} 1/(n 2^n) < 2^-total; truncation loses < n ulps.
  BigInt lo = sum >> guard;
  BigInt hi = (sum + BigInt(static_cast<unsigned long>(n + 2))) >> guard;
  return {lo, hi + 1};
}

// floor(2^bits * log(1 + 1/t)) bracket from sum (-1)^{n+1} / (n t^n), t >= 2.
inline std::pair<BigInt, BigInt> log_ratio_fixed(std::uint64_t t, std::size_t bits) {
  const std::size_t guard = 32;
  const std::size_t total = bits + guard;
  const BigInt one = BigInt(1) << total;
  BigInt sum = 0;
  BigInt tp = emcf::from_u64(t);
  std::size_t n = 1;
  for (; (one / tp) > 0; ++n, tp *= emcf::from_u64(t)) {
    const BigInt term = one / (tp * static_cast<unsigned long>(n));
    if (n % 2 == 1) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  BigInt lo = (sum - static_cast<unsigned long>(n + 2)) >> guard;
  BigInt hi = (sum + static_cast<unsigned long>(n + 2)) >> guard;
  return {lo, hi + 1};
}

// Plain Euclid on num/den.
inline std::vector<BigInt> euclid(BigInt num, BigInt den) {
  std::vector<BigInt> out;
  while (den != 0) {
    BigInt q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    out.push_back(q);
    num = den;
    den = r;
  }
  return out;
}

// (p_j, q_j) for every j by the textbook recurrence.
inline std::vector<std::pair<BigInt, BigInt>> convergents(const std::vector<BigInt>& a) {
  std::vector<std::pair<BigInt, BigInt>> out;
  BigInt p0 = 1, q0 = 0, p1 = a.at(0), q1 = 1;
  out.emplace_back(p1, q1);
  for (std::size_t i = 1; i < a.size(); ++i) {
    BigInt p2 = a[i] * p1 + p0, q2 = a[i] * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    out.emplace_back(p1, q1);
  }
  return out;
}

inline bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Multiplicative order of 3 mod p equals p - 1, by brute force.
inline bool brute_primitive_root_3(std::uint64_t p) {
  std::uint64_t x = 1;
  for (std::uint64_t k = 1; k < p - 1; ++k) {
    x = x * 3 % p;
    if (x == 1) return false;
  }
  return true;
}

// nu_p(3^(p-1) - 1) by exact big-integer division.
inline int brute_fermat_order(std::uint64_t p) {
  BigInt x = emcf::pow_ui(BigInt(3), static_cast<unsigned long>(p - 1)) - 1;
  int v = 0;
  while (x % emcf::from_u64(p) == 0) {
    x /= emcf::from_u64(p);
    ++v;
  }
  return v;
}

// 1 + A_1 ... A_{n-1}.
inline BigInt sylvester(int n) {
  BigInt prod = 1;
  BigInt a = 2;
  for (int i = 1; i < n; ++i) {
    prod *= a;
    a = prod + 1;
  }
  return a;
}

}  // namespace oracle
