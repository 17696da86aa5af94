#include <doctest.h>

#include "emcf/logcomp.hpp"
#include "emcf/real.hpp"
#include "oracles.hpp"

using namespace emcf;

namespace {

RationalInterval fixed_point(const std::pair<BigInt, BigInt>& br, std::size_t bits) {
  const BigInt scale = pow2(bits);
  return RationalInterval{Rational(br.first, scale), Rational(br.second, scale), 0};
}

Rational ten_pow_neg(long d) { return Rational(BigInt(1), pow_ui(BigInt(10), static_cast<unsigned long>(d))); }

}  // namespace

TEST_SUITE("logcomp") {
  TEST_CASE("log 2 enclosure overlaps the fixed-point series oracle") {
    for (long d : {10L, 100L, 1000L, 3000L}) {
      const auto iv = compute_log2(d);
      const std::size_t bits = static_cast<std::size_t>(d * 3.33) + 16;
      const auto ref = fixed_point(oracle::log2_fixed(bits), bits);
      CHECK(iv.overlaps(ref));
      CHECK(iv.width() <= ten_pow_neg(d));
      CHECK(iv.digits_valid >= d);
    }
  }

  TEST_CASE("both log 2 formulas agree and nest") {
    LogOptions a, b;
    a.formula = Log2Formula::atanh_third;
    b.formula = Log2Formula::machin3;
    for (long d : {50L, 777L, 5000L}) {
      const auto x = compute_log2(d, a);
      const auto y = compute_log2(d, b);
      CHECK(x.overlaps(y));
      x.check();
      y.check();
    }
    const auto coarse = compute_log2(200, a);
    const auto fine = compute_log2(2000, a);
    CHECK(coarse.overlaps(fine));
  }

  TEST_CASE("log(1 + 1/t) against the alternating series") {
    for (std::uint64_t t : {2ULL, 3ULL, 10ULL, 1000ULL}) {
      const auto iv = compute_log_ratio(t, 400);
      const auto ref = fixed_point(oracle::log_ratio_fixed(t, 1400), 1400);
      CHECK(iv.overlaps(ref));
      CHECK(iv.width() <= ten_pow_neg(400));
    }
    CHECK(compute_log_ratio(1, 300).overlaps(compute_log2(300)));
  }

  TEST_CASE("atanh_inverse brackets MPFR's atanh") {
    PrecisionGuard g(400);
    for (std::uint64_t x : {3ULL, 26ULL, 4801ULL, 8749ULL}) {
      const auto iv = atanh_inverse(x, 1200);
      Real ref;
      mpfr_set_prec(ref.get(), 2000);
      Real inv(Rational(BigInt(1), from_u64(x)));
      mpfr_atanh(ref.get(), inv.get(), MPFR_RNDN);
      CHECK(Real(iv.lo) <= ref);
      CHECK(ref <= Real(iv.hi));
      CHECK(iv.width() == Rational(BigInt(1), pow2(1199)));
    }
  }

  TEST_CASE("scale_interval recomputes the width contract") {
    const auto iv = compute_log2(100);
    const auto s = scale_interval(iv, 1000);
    CHECK(s.lo == iv.lo / 1000);
    CHECK(s.hi == iv.hi / 1000);
    CHECK(s.digits_valid >= 102);
    CHECK(s.width() <= ten_pow_neg(s.digits_valid));
    CHECK_THROWS(scale_interval(iv, 0));
  }

  TEST_CASE("interval contract violations are rejected") {
    RationalInterval bad{Rational(2), Rational(1), 0};
    CHECK_THROWS_AS(bad.check(), std::logic_error);
    RationalInterval wide{Rational(1), Rational(2), 3};
    CHECK_THROWS_AS(wide.check(), std::logic_error);
  }

  TEST_CASE("digit records") {
    const auto iv = compute_log2(202);
    const auto rec = make_digit_record(iv, "log2", 200);
    CHECK(rec.expansion.substr(0, 12) == "0.6931471805");
    CHECK(rec.expansion.size() == 2 + 202);
    CHECK(rec.interval().contains(iv));
    CHECK(rec.interval().width() == 2 * ten_pow_neg(201));
    // Too wide for 200 digits.
    CHECK_THROWS(make_digit_record(compute_log2(150), "log2", 200));

    const auto again = compute_digit_record("log2", 200);
    CHECK(again.expansion == rec.expansion);
    CHECK(again.midpoint() == rec.midpoint());

    const auto r1 = compute_digit_record("log1p:1", 80);
    CHECK(r1.interval().overlaps(compute_log2(80)));
    CHECK_THROWS(compute_digit_record("pi", 10));
  }

  TEST_CASE("digit records nest as the digit count grows") {
    RationalInterval prev = compute_digit_record("log2", 20).interval();
    for (long d : {40L, 80L, 160L, 320L}) {
      const auto cur = compute_digit_record("log2", d).interval();
      CHECK(prev.contains(cur));
      prev = cur;
    }
  }

  TEST_CASE("resource ceiling") {
    LogOptions opts;
    opts.max_digits = 1000;
    CHECK_THROWS_AS(compute_log2(5000, opts), BudgetError);
  }

  TEST_CASE("certified_digits") {
    CHECK(certified_digits(Rational(1, 1000)) == 3);
    CHECK(certified_digits(Rational(1, 999)) == 2);
    CHECK(certified_digits(Rational(BigInt(1), pow_ui(BigInt(10), 500))) == 500);
  }
}
