#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "emcf/arithmetic.hpp"
#include "oracles.hpp"

using namespace emcf;

TEST_SUITE("arithmetic") {
  TEST_CASE("primality against trial division") {
    for (std::uint64_t n = 0; n < 20000; ++n) REQUIRE(is_prime(n) == oracle::trial_prime(n));
    CHECK(is_prime(18446744073709551557ULL));
    CHECK(!is_prime(18446744073709551557ULL - 2));
    CHECK(!is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
    const auto ps = primes_up_to(1000);
    CHECK(ps.size() == 168);
    CHECK(ps.front() == 2);
    CHECK(ps.back() == 997);
  }

  TEST_CASE("distinct prime factors and valuations") {
    for (std::uint64_t n = 2; n < 3000; ++n) {
      std::uint64_t rest = n;
      for (auto p : distinct_prime_factors(n)) {
        REQUIRE(oracle::trial_prime(p));
        const int v = valuation(from_u64(n), p);
        REQUIRE(v >= 1);
        for (int i = 0; i < v; ++i) rest /= p;
      }
      REQUIRE(rest == 1);
    }
    CHECK(valuation(pow_ui(BigInt(5), 40) * 3, 5) == 40);
  }

  TEST_CASE("primitive root 3 and Fermat orders against brute force") {
    for (std::uint64_t p = 5; p < 3000; ++p) {
      if (!oracle::trial_prime(p)) continue;
      REQUIRE(is_primitive_root_3(p) == oracle::brute_primitive_root_3(p));
      if (p < 400) REQUIRE(fermat_order(p) == oracle::brute_fermat_order(p));
    }
    CHECK(fermat_order(11) == 2);
    CHECK(fermat_order(1006003) == 2);
  }

  TEST_CASE("membership of P(N) and required orders") {
    const auto one = prime_set(1, 2000);
    for (const auto& prof : one) {
      CHECK(prof.reason == MembershipReason::primitive_root_3);
      CHECK(oracle::brute_primitive_root_3(prof.p));
      CHECK(prof.required_order == prof.fermat_order + 1);
      CHECK(prof.tracking_modulus == static_cast<std::uint64_t>(std::pow(prof.p, prof.required_order + 1) + 0.5));
    }
    CHECK(std::any_of(one.begin(), one.end(), [](const PrimeProfile& p) { return p.p == 149; }));
    CHECK_THROWS(make_profile(1, 13));  // 3 has order 3 mod 13

    // p - 1 | N brings in divisor-condition primes.
    const auto p4 = make_profile(4, 5);
    CHECK(p4.nu_N == 0);
    CHECK((p4.reason == MembershipReason::divisor_condition || p4.reason == MembershipReason::both));
    const auto p25 = make_profile(250, 5);
    CHECK(p25.nu_N == 3);
    CHECK(p25.required_order == p25.fermat_order + 3 + 1);

    // Monotone in the bound and parallel agrees with serial.
    const auto a = prime_set(768, 500, false), b = prime_set(768, 5000, true);
    REQUIRE(a.size() <= b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].p == b[i].p);
    for (const auto& prof : b) {
      CHECK(prof.p >= 5);
      const bool divisor = 768 % (prof.p - 1) == 0;
      CHECK((divisor || oracle::brute_primitive_root_3(prof.p)));
    }
  }

  TEST_CASE("divisibility constants") {
    const auto k = divisibility_constants();
    BigInt lcm = 1;
    for (unsigned long i = 2; i <= 200; ++i) mpz_lcm_ui(lcm.get_mpz_t(), lcm.get_mpz_t(), i);
    CHECK(k.N1 == lcm);
    CHECK(valuation(k.N2, 2) == 8);
    CHECK(valuation(k.N2, 3) == 5);
    CHECK(valuation(k.N2, 5) == 4);
    CHECK(valuation(k.N2, 7) == 3);
    for (std::uint64_t p : {11ULL, 13ULL, 17ULL, 19ULL}) CHECK(valuation(k.N2, p) == 2);
    BigInt rest = k.N2;
    for (std::uint64_t p = 2; p <= 997; ++p)
      if (oracle::trial_prime(p))
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) rest /= p;
    CHECK(rest == 1);
  }

  TEST_CASE("power-sum congruence for 2 <= l <= 200, 2 <= r <= 20") {
    for (std::uint64_t l = 2; l <= 200; ++l)
      for (std::uint64_t r = 2; r <= 20; ++r) {
        BigInt s = 0;
        for (std::uint64_t j = 1; j < l; ++j) s += pow_ui(from_u64(j), static_cast<unsigned long>(r));
        REQUIRE(s == power_sum_oracle(l, r));
        Rational x(s, from_u64(l));
        x.canonicalize();
        INFO("l=", l, " r=", r);
        REQUIRE(staudt_fraction(l, r).matches(x));
      }
  }

  TEST_CASE("staudt prediction details") {
    const auto even = staudt_fraction(6, 2);
    CHECK(even.modulus == 1);
    CHECK(even.value == Rational(1, 6));  // frac(-1/2 - 1/3)
    const auto odd = staudt_fraction(10, 3);
    CHECK(odd.modulus == Rational(1, 2));
    CHECK(frac(Rational(-1, 3)) == Rational(2, 3));
    CHECK(frac(Rational(7, 2)) == Rational(1, 2));
    CHECK_FALSE(staudt_fraction(6, 2).matches(Rational(1, 3)));
  }
}
