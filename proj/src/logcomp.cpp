#include "emcf/logcomp.hpp"

#include <cmath>

#include "emcf/kernels.hpp"

namespace emcf {

namespace {

constexpr double kLog2Of10 = 3.3219280948873623;

std::size_t bits_for_digits(long digits) {
  return static_cast<std::size_t>(std::ceil(static_cast<double>(digits) * kLog2Of10)) + 3;
}

Rational dyadic(const BigInt& num, std::size_t bits) {
  Rational r(num, pow2(bits));
  r.canonicalize();
  return r;
}

void check_budget(long digits, const LogOptions& options) {
  if (digits < 1) throw std::invalid_argument("digits must be positive");
  if (digits > options.max_digits)
    throw BudgetError("requested " + std::to_string(digits) + " digits exceeds the ceiling of " +
                      std::to_string(options.max_digits));
}

RationalInterval finish(Rational lo, Rational hi) {
  RationalInterval iv{std::move(lo), std::move(hi), 0};
  iv.digits_valid = certified_digits(iv.width());
  iv.check();
  return iv;
}

RationalInterval log2_machin(std::size_t bits, bool parallel) {
  // log 2 = 18 atanh(1/26) - 2 atanh(1/4801) + 8 atanh(1/8749)
  const std::size_t inner = bits + 6;
  RationalInterval a;
  RationalInterval b;
  RationalInterval c;
  if (parallel) {
#pragma omp parallel sections
    {
#pragma omp section
      a = atanh_inverse(26, inner, true);
#pragma omp section
      b = atanh_inverse(4801, inner, true);
#pragma omp section
      c = atanh_inverse(8749, inner, true);
    }
  } else {
    a = atanh_inverse(26, inner, false);
    b = atanh_inverse(4801, inner, false);
    c = atanh_inverse(8749, inner, false);
  }
  return finish(18 * a.lo - 2 * b.hi + 8 * c.lo, 18 * a.hi - 2 * b.lo + 8 * c.hi);
}

}  // namespace

void RationalInterval::check() const {
  if (!(lo > 0)) throw std::logic_error("interval lower endpoint must be positive");
  if (lo > hi) throw std::logic_error("interval endpoints out of order");
  if (lo != hi && certified_digits(width()) < digits_valid)
    throw std::logic_error("interval wider than its certified digit count");
}

RationalInterval atanh_inverse(std::uint64_t x, std::size_t bits, bool parallel) {
  if (x < 2) throw std::invalid_argument("atanh_inverse requires x >= 2");
  // Tail after n terms is below x^-(2n+1) * x^2/(x^2-1) <= 2^-bits once
  // (2n+1) log2 x >= bits + 2.
  const double lx = std::log2(static_cast<double>(x));
  auto n = static_cast<std::uint64_t>(std::ceil((static_cast<double>(bits) + 2.0) / (2.0 * lx))) + 1;
  const auto split = parallel ? kernels::omp::atanh_split(x, 0, n) : kernels::serial::atanh_split(x, 0, n);

  // atanh(1/x) ~= T / (B Q x); floor to `bits` fractional bits and widen by
  // one unit for truncation and one for the series tail.
  BigInt den = split.B * split.Q * from_u64(x);
  BigInt num = split.T << bits;
  BigInt floor_val;
  mpz_fdiv_q(floor_val.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return finish(dyadic(floor_val, bits), dyadic(floor_val + 2, bits));
}

RationalInterval compute_log2(long digits, const LogOptions& options) {
  check_budget(digits, options);
  const std::size_t bits = bits_for_digits(digits);
  Log2Formula formula = options.formula;
  if (formula == Log2Formula::automatic)
    formula = digits >= options.machin_threshold ? Log2Formula::machin3 : Log2Formula::atanh_third;
  if (formula == Log2Formula::machin3) return log2_machin(bits, options.parallel);
  const auto third = atanh_inverse(3, bits + 1, options.parallel);
  return finish(2 * third.lo, 2 * third.hi);
}

RationalInterval compute_log_ratio(std::uint64_t t, long digits, const LogOptions& options) {
  if (t < 1) throw std::invalid_argument("t must be positive");
  if (t > (std::uint64_t{1} << 62)) throw std::invalid_argument("t too large");
  check_budget(digits, options);
  const auto base = atanh_inverse(2 * t + 1, bits_for_digits(digits) + 1, options.parallel);
  return finish(2 * base.lo, 2 * base.hi);
}

RationalInterval scale_interval(const RationalInterval& iv, const BigInt& denominator) {
  if (denominator < 1) throw std::invalid_argument("denominator must be positive");
  RationalInterval out{iv.lo / Rational(denominator), iv.hi / Rational(denominator), iv.digits_valid};
  if (out.lo != out.hi) out.digits_valid = std::max(iv.digits_valid, certified_digits(out.width()));
  return out;
}

// --- digit records ------------------------------------------------------------

Rational DigitRecord::midpoint() const {
  const auto dot = expansion.find('.');
  std::string digits_only = expansion;
  std::size_t places = 0;
  if (dot != std::string::npos) {
    places = expansion.size() - dot - 1;
    digits_only.erase(dot, 1);
  }
  Rational r(parse_bigint(digits_only), pow_ui(BigInt(10), static_cast<unsigned long>(places)));
  r.canonicalize();
  return r;
}

RationalInterval DigitRecord::interval() const {
  const Rational mid = midpoint();
  Rational radius(1, pow_ui(BigInt(10), static_cast<unsigned long>(digits + 1)));
  radius.canonicalize();
  RationalInterval iv{mid - radius, mid + radius, digits};
  iv.check();
  return iv;
}

DigitRecord make_digit_record(const RationalInterval& iv, const std::string& constant, long digits) {
  if (digits < 1) throw std::invalid_argument("digits must be positive");
  // Requires width <= 9 * 10^-(digits+2) so that midpoint +/- 10^-(digits+1)
  // still encloses the source interval after truncation.
  const long places = digits + 2;
  const BigInt scale = pow_ui(BigInt(10), static_cast<unsigned long>(places));
  Rational limit(9, scale);
  limit.canonicalize();
  if (iv.width() > limit) throw std::invalid_argument("interval too wide for the requested digit record");

  Rational scaled = iv.lo * Rational(scale);
  BigInt x;
  mpz_fdiv_q(x.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  BigInt int_part = x / scale;
  BigInt frac_part = x % scale;
  std::string frac = frac_part.get_str();
  frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
  return DigitRecord{constant, digits, int_part.get_str() + "." + frac};
}

DigitRecord compute_digit_record(const std::string& constant, long digits, const LogOptions& options) {
  RationalInterval iv;
  if (constant == "log2") {
    iv = compute_log2(digits + 2, options);
  } else if (constant.rfind("log1p:", 0) == 0) {
    const auto t = std::stoull(constant.substr(6));
    iv = compute_log_ratio(t, digits + 2, options);
  } else {
    throw std::invalid_argument("unknown constant: " + constant);
  }
  return make_digit_record(iv, constant, digits);
}

}  // namespace emcf
