#pragma once

// Sylvester-sequence bounds and the resulting lower bound on the number of
// prime factors of m - 1.

#include <optional>
#include <string>
#include <vector>

#include "emcf/bigint.hpp"
#include "emcf/real.hpp"

namespace emcf {

/// A_1 = 2, A_{n+1} = A_n^2 - A_n + 1.
struct SylvesterLog {
  int n = 0;
  Real log10_lo;
  Real log10_hi;
  std::optional<BigInt> exact;  // n <= 12
};

/// Bracketed log10 A_n for 1 <= n <= 256, rounded outward.
SylvesterLog sylvester_log10(int n);

/// Exact A_n from the product form A_n = 1 + A_1 ... A_{n-1}.
BigInt sylvester_product_form(int n);

struct OmegaBound {
  int omega = 0;
  bool tie = false;     // log10 m falls inside the bracket of log10 A_{omega+1}
  std::string branch;   // "curtiss" or "reciprocal_sum"
};

/// Least omega(m-1) compatible with m > 10^log10_m: min(58, omega*) where
/// omega* is the least omega with m <= A_{omega+1} not excluded.
OmegaBound min_omega_from_bound(const Real& log10_m);

/// Same computation through the estimate A_n < (1.066e13)^(2^(n-7)).
int min_omega_from_shortcut(const Real& log10_m);

/// Exact sum of 1/p; throws on repeated entries.
Rational reciprocal_sum_check(const std::vector<std::uint64_t>& primes);

/// Least n such that the reciprocals of the first n primes sum to at least `target`.
int first_prime_count_with_sum_at_least(const Rational& target);

}  // namespace emcf
