#include <doctest.h>

#include "emcf/arithmetic.hpp"
#include "emcf/omega.hpp"
#include "oracles.hpp"

using namespace emcf;

TEST_SUITE("omega") {
  TEST_CASE("exact Sylvester terms against the recurrence") {
    for (int n = 1; n <= 12; ++n) {
      const auto s = sylvester_log10(n);
      REQUIRE(s.exact);
      CHECK(*s.exact == oracle::sylvester(n));
      CHECK(sylvester_product_form(n) == oracle::sylvester(n));
    }
    CHECK(*sylvester_log10(5).exact == 1807);
    CHECK(!sylvester_log10(13).exact);
    CHECK_THROWS(sylvester_log10(0));
    CHECK_THROWS(sylvester_log10(257));
  }

  TEST_CASE("log brackets contain the exact logarithm and stay narrow") {
    PrecisionGuard g(400);
    for (int n = 1; n <= 16; ++n) {
      const auto s = sylvester_log10(n);
      const Real exact = log10(Real(oracle::sylvester(n)));
      CHECK(s.log10_lo <= exact);
      CHECK(exact <= s.log10_hi);
    }
    for (int n = 13; n <= 256; n += 17) {
      const auto s = sylvester_log10(n);
      CHECK(s.log10_lo < s.log10_hi);
      CHECK((s.log10_hi - s.log10_lo) / s.log10_hi < Real(1e-20));
    }
  }

  TEST_CASE("omega lower bound") {
    const auto b = min_omega_from_bound(Real(std::string("1667658416.4")));
    CHECK(b.omega == 33);
    CHECK(b.branch == "curtiss");
    CHECK(!b.tie);
    CHECK(min_omega_from_shortcut(Real(std::string("1667658416.4"))) == 33);
    CHECK(min_omega_from_bound(Real(0.001)).omega == 1);
    CHECK(min_omega_from_bound(Real(14L)).omega == 7);
    const auto cap = min_omega_from_bound(Real(1e30));
    CHECK(cap.omega == 58);
    CHECK(cap.branch == "reciprocal_sum");

    // Monotone in the bound, and the answer brackets log10 m between
    // consecutive Sylvester terms.
    int prev = 0;
    for (double l = 0.5; l < 1e6; l *= 1.7) {
      const auto o = min_omega_from_bound(Real(l));
      CHECK(o.omega >= prev);
      prev = o.omega;
      if (o.omega < 58 && o.omega > 1) {
        CHECK(sylvester_log10(o.omega + 1).log10_hi >= Real(l));
        CHECK(sylvester_log10(o.omega).log10_lo < Real(l));
      }
    }
  }

  TEST_CASE("prime reciprocal sums") {
    auto p = primes_up_to(300);
    REQUIRE(p.size() >= 59);
    p.resize(58);
    Rational s = 0;
    for (auto q : p) s += Rational(1, q);
    s.canonicalize();
    CHECK(reciprocal_sum_check(p) == s);
    CHECK(s < 2);
    CHECK(first_prime_count_with_sum_at_least(Rational(2)) == 59);
    CHECK(first_prime_count_with_sum_at_least(Rational(1)) == 3);  // 1/2 + 1/3 + 1/5
    CHECK_THROWS(reciprocal_sum_check({2, 3, 3}));
  }
}
