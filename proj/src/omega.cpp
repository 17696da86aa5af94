#include "emcf/omega.hpp"

#include <algorithm>
#include <stdexcept>

#include "emcf/arithmetic.hpp"

namespace emcf {

namespace {

constexpr int kExactLimit = 12;
constexpr int kMaxIndex = 256;
constexpr int kOmegaCap = 58;

std::vector<BigInt> exact_prefix() {
  std::vector<BigInt> a{BigInt(2)};
  while (static_cast<int>(a.size()) < kExactLimit) a.push_back(a.back() * a.back() - a.back() + 1);
  return a;
}

mpfr_prec_t bits_for(int n) { return static_cast<mpfr_prec_t>(n + 128); }

}  // namespace

BigInt sylvester_product_form(int n) {
  if (n < 1) throw std::invalid_argument("Sylvester index must be positive");
  BigInt prod = 1;
  for (int i = 1; i < n; ++i) prod *= prod + 1;
  return prod + 1;
}

SylvesterLog sylvester_log10(int n) {
  if (n < 1 || n > kMaxIndex) throw std::invalid_argument("sylvester_log10 requires 1 <= n <= 256");
  const mpfr_prec_t prec = bits_for(n);
  const auto prefix = exact_prefix();
  const int start = std::min(n, kExactLimit);

  mpfr_t lo, hi, a;
  mpfr_inits2(prec, lo, hi, static_cast<mpfr_ptr>(nullptr));
  mpfr_init2(a, std::max<mpfr_prec_t>(prec, static_cast<mpfr_prec_t>(bit_length(prefix[start - 1]))));
  mpfr_set_z(a, prefix[start - 1].get_mpz_t(), MPFR_RNDN);  // exact
  mpfr_log10(lo, a, MPFR_RNDD);
  mpfr_log10(hi, a, MPFR_RNDU);
  // log10 A_{n+1} = 2 log10 A_n + log10(1 - 1/A_n + 1/A_n^2): the correction
  // lies in (log10(1 - 1/A_n), 0), so hi doubles and lo takes the correction
  // at the smallest admissible A_n.
  mpfr_t corr;
  mpfr_init2(corr, prec);
  for (int i = start; i < n; ++i) {
    mpfr_neg(corr, lo, MPFR_RNDU);
    mpfr_exp10(corr, corr, MPFR_RNDU);           // >= 1/A_i
    mpfr_ui_sub(corr, 1, corr, MPFR_RNDD);       // <= 1 - 1/A_i
    mpfr_log10(corr, corr, MPFR_RNDD);
    mpfr_mul_ui(lo, lo, 2, MPFR_RNDD);
    mpfr_add(lo, lo, corr, MPFR_RNDD);
    mpfr_mul_ui(hi, hi, 2, MPFR_RNDU);
  }
  SylvesterLog out;
  out.n = n;
  out.log10_lo = Real(0L);
  out.log10_hi = Real(0L);
  mpfr_set_prec(out.log10_lo.get(), prec);
  mpfr_set_prec(out.log10_hi.get(), prec);
  mpfr_set(out.log10_lo.get(), lo, MPFR_RNDD);
  mpfr_set(out.log10_hi.get(), hi, MPFR_RNDU);
  if (n <= kExactLimit) out.exact = prefix[n - 1];
  mpfr_clears(lo, hi, a, corr, static_cast<mpfr_ptr>(nullptr));
  return out;
}

OmegaBound min_omega_from_bound(const Real& log10_m) {
  if (log10_m.sign() <= 0) throw std::invalid_argument("log10_m must be positive");
  OmegaBound out;
  for (int omega = 1; omega < kOmegaCap; ++omega) {
    const auto s = sylvester_log10(omega + 1);
    // Excluded only when A_{omega+1} < m is certain.
    if (s.log10_hi < log10_m) continue;
    out.omega = omega;
    out.tie = s.log10_lo <= log10_m;
    out.branch = "curtiss";
    return out;
  }
  out.omega = kOmegaCap;
  out.branch = "reciprocal_sum";
  return out;
}

int min_omega_from_shortcut(const Real& log10_m) {
  if (log10_m.sign() <= 0) throw std::invalid_argument("log10_m must be positive");
  const Real base = log10(Real(1.066e13));
  for (int omega = 1; omega < kOmegaCap; ++omega) {
    // m < (1.066e13)^(2^(omega-6))
    const Real bound = base * pow(Real(2L), static_cast<long>(omega - 6));
    if (bound >= log10_m) return omega;
  }
  return kOmegaCap;
}

Rational reciprocal_sum_check(const std::vector<std::uint64_t>& primes) {
  auto sorted = primes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("reciprocal_sum_check: duplicate prime");
  Rational sum = 0;
  for (auto p : sorted) {
    if (p == 0) throw std::invalid_argument("reciprocal_sum_check: zero entry");
    sum += Rational(BigInt(1), from_u64(p));
  }
  sum.canonicalize();
  return sum;
}

int first_prime_count_with_sum_at_least(const Rational& target) {
  Rational sum = 0;
  int count = 0;
  for (std::uint64_t bound = 1024;; bound *= 4) {
    sum = 0;
    count = 0;
    for (auto p : primes_up_to(bound)) {
      sum += Rational(BigInt(1), from_u64(p));
      ++count;
      if (sum >= target) return count;
    }
  }
}

}  // namespace emcf
