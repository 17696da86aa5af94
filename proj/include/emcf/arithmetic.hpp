#pragma once

// Prime set P(N), Fermat-quotient orders and the von Staudt-Clausen
// power-sum congruence.

#include <cstdint>
#include <string>
#include <vector>

#include "emcf/bigint.hpp"

namespace emcf {

enum class MembershipReason { divisor_condition, primitive_root_3, both };

std::string to_string(MembershipReason reason);

/// A prime of P(N) with the data condition (d) needs.
struct PrimeProfile {
  std::uint64_t p = 0;
  MembershipReason reason = MembershipReason::primitive_root_3;
  int fermat_order = 1;     // nu_p(3^(p-1) - 1)
  int nu_N = 0;             // nu_p(N)
  int required_order = 2;   // fermat_order + nu_N + 1
  std::uint64_t tracking_modulus = 0;  // p^(required_order + 1)
};

/// Deterministic for all 64-bit inputs.
bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);
/// Distinct prime factors by trial division.
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);

/// nu_p(n) for n != 0.
int valuation(const BigInt& n, std::uint64_t p);

/// Whether 3 generates (Z/pZ)^*. p = 2 counts as true (order 1 = p - 1).
bool is_primitive_root_3(std::uint64_t p);

/// nu_p(3^(p-1) - 1), p prime and p != 3.
int fermat_order(std::uint64_t p);

/// Profile for one prime; throws if p is not in P(N).
PrimeProfile make_profile(const BigInt& N, std::uint64_t p);

/// All primes 5 <= p <= bound in P(N), ascending.
std::vector<PrimeProfile> prime_set(const BigInt& N, std::uint64_t bound, bool parallel = true);

/// N1 = lcm(1..200); N2 = 2^8 3^5 5^4 7^3 11^2 13^2 17^2 19^2 prod_{23<=p<=997} p.
struct DivisibilityConstants {
  BigInt N1;
  BigInt N2;
};
DivisibilityConstants divisibility_constants();

/// Fractional part in [0, 1).
Rational frac(const Rational& x);

/// Prediction for (sum_{j<l} j^r) / l: congruent to `value` modulo `modulus`.
/// Odd r > 1: value 0 modulo 1/2. Even r: frac(-sum_{p|l, p-1|r} 1/p) modulo 1.
struct StaudtPrediction {
  Rational value;
  Rational modulus;

  bool matches(const Rational& x) const;
};

StaudtPrediction staudt_fraction(std::uint64_t l, std::uint64_t r);

/// Exact sum_{j=1}^{l-1} j^r; l <= 10^4, r <= 64.
BigInt power_sum_oracle(std::uint64_t l, std::uint64_t r);

}  // namespace emcf
