#include "emcf/arithmetic.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace emcf {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 e, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return result;
}

bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

void require_prime(u64 p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

}  // namespace

std::string to_string(MembershipReason reason) {
  switch (reason) {
    case MembershipReason::divisor_condition: return "divisor_condition";
    case MembershipReason::primitive_root_3: return "primitive_root_3";
    case MembershipReason::both: return "both";
  }
  return "unknown";
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic below 2^64.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

std::vector<u64> primes_up_to(u64 bound) {
  std::vector<u64> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (u64 i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 k = i * i; k <= bound; k += i) composite[k] = true;
  }
  return out;
}

std::vector<u64> distinct_prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

int valuation(const BigInt& n, u64 p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  if (p < 2) throw std::invalid_argument("valuation base must be at least 2");
  BigInt rest;
  return static_cast<int>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), from_u64(p).get_mpz_t()));
}

bool is_primitive_root_3(u64 p) {
  require_prime(p);
  if (p == 3) throw std::invalid_argument("3 is not a unit modulo 3");
  if (p == 2) return true;
  for (u64 q : distinct_prime_factors(p - 1)) {
    if (powmod(3, (p - 1) / q, p) == 1) return false;
  }
  return true;
}

int fermat_order(u64 p) {
  require_prime(p);
  if (p == 3) throw std::invalid_argument("fermat_order undefined for p = 3");
  const BigInt P = from_u64(p);
  for (unsigned long e = 4;; e *= 2) {
    const BigInt modulus = pow_ui(P, e);
    BigInt x;
    mpz_powm_ui(x.get_mpz_t(), BigInt(3).get_mpz_t(), p - 1, modulus.get_mpz_t());
    BigInt d = x - 1;
    if (d != 0) return valuation(d, p);
  }
}

PrimeProfile make_profile(const BigInt& N, u64 p) {
  require_prime(p);
  if (p == 3) throw std::invalid_argument("3 is excluded from prime profiles");
  const bool divides = mpz_divisible_ui_p(N.get_mpz_t(), p - 1) != 0;
  const bool root = is_primitive_root_3(p);
  if (!divides && !root) throw std::invalid_argument(std::to_string(p) + " is not in P(N)");
  PrimeProfile prof;
  prof.p = p;
  prof.reason = divides && root ? MembershipReason::both
                : divides       ? MembershipReason::divisor_condition
                                : MembershipReason::primitive_root_3;
  prof.fermat_order = fermat_order(p);
  prof.nu_N = valuation(N, p);
  prof.required_order = prof.fermat_order + prof.nu_N + 1;
  const BigInt mod = pow_ui(from_u64(p), static_cast<unsigned long>(prof.required_order + 1));
  if (!fits_u64(mod) || bit_length(mod) > 63)
    throw std::overflow_error("tracking modulus for p = " + std::to_string(p) + " exceeds 63 bits");
  prof.tracking_modulus = to_u64(mod);
  return prof;
}

std::vector<PrimeProfile> prime_set(const BigInt& N, u64 bound, bool parallel) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  const auto primes = primes_up_to(bound);
  std::vector<std::optional<PrimeProfile>> slots(primes.size());
  const auto count = static_cast<long>(primes.size());
  auto visit = [&](long i) {
    const u64 p = primes[i];
    if (p < 5) return;
    const bool member = mpz_divisible_ui_p(N.get_mpz_t(), p - 1) != 0 || is_primitive_root_3(p);
    if (member) slots[i] = make_profile(N, p);
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 256)
    for (long i = 0; i < count; ++i) visit(i);
  } else {
    for (long i = 0; i < count; ++i) visit(i);
  }
  std::vector<PrimeProfile> out;
  for (auto& s : slots)
    if (s) out.push_back(*s);
  return out;
}

DivisibilityConstants divisibility_constants() {
  DivisibilityConstants c;
  c.N1 = 1;
  for (unsigned long i = 2; i <= 200; ++i) mpz_lcm_ui(c.N1.get_mpz_t(), c.N1.get_mpz_t(), i);
  c.N2 = pow_ui(2, 8) * pow_ui(3, 5) * pow_ui(5, 4) * pow_ui(7, 3);
  for (unsigned long p : {11, 13, 17, 19}) c.N2 *= pow_ui(BigInt(p), 2);
  for (u64 p : primes_up_to(997))
    if (p >= 23) c.N2 *= from_u64(p);
  return c;
}

Rational frac(const Rational& x) {
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rational r = x - Rational(fl);
  r.canonicalize();
  return r;
}

bool StaudtPrediction::matches(const Rational& x) const {
  Rational k = (x - value) / modulus;
  k.canonicalize();
  return k.get_den() == 1;
}

StaudtPrediction staudt_fraction(u64 l, u64 r) {
  if (l < 2) throw std::invalid_argument("staudt_fraction requires l >= 2");
  if (r < 2) throw std::invalid_argument("staudt_fraction requires r >= 2");
  if (r % 2 == 1) return StaudtPrediction{Rational(0), Rational(1, 2)};
  Rational sum(0);
  for (u64 p : distinct_prime_factors(l))
    if (r % (p - 1) == 0) sum += Rational(1, from_u64(p));
  return StaudtPrediction{frac(-sum), Rational(1)};
}

BigInt power_sum_oracle(u64 l, u64 r) {
  if (l < 1 || l > 10'000) throw std::invalid_argument("power_sum_oracle requires 1 <= l <= 10^4");
  if (r > 64) throw std::invalid_argument("power_sum_oracle requires r <= 64");
  BigInt sum(0);
  for (u64 j = 1; j < l; ++j) sum += pow_ui(from_u64(j), static_cast<unsigned long>(r));
  return sum;
}

}  // namespace emcf
