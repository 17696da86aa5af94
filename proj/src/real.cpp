#include "emcf/real.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace emcf {

namespace {
thread_local mpfr_prec_t g_working_bits = 256;
}

mpfr_prec_t digits_to_bits(int digits) {
  if (digits < 1) digits = 1;
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 8;
}

mpfr_prec_t working_precision() { return g_working_bits; }
void set_working_precision(mpfr_prec_t bits) { g_working_bits = bits; }

PrecisionGuard::PrecisionGuard(int decimal_digits) : saved_(g_working_bits) {
  g_working_bits = digits_to_bits(decimal_digits);
}
PrecisionGuard::~PrecisionGuard() { g_working_bits = saved_; }

Real::Real() {
  mpfr_init2(value_, g_working_bits);
  mpfr_set_zero(value_, 1);
}
Real::Real(double v) {
  mpfr_init2(value_, g_working_bits);
  mpfr_set_d(value_, v, MPFR_RNDN);
}
Real::Real(long v) {
  mpfr_init2(value_, g_working_bits);
  mpfr_set_si(value_, v, MPFR_RNDN);
}
Real::Real(const BigInt& v) {
  mpfr_init2(value_, g_working_bits);
  mpfr_set_z(value_, v.get_mpz_t(), MPFR_RNDN);
}
Real::Real(const Rational& v) {
  mpfr_init2(value_, g_working_bits);
  mpfr_set_q(value_, v.get_mpq_t(), MPFR_RNDN);
}
Real::Real(const std::string& decimal) {
  mpfr_init2(value_, g_working_bits);
  if (mpfr_set_str(value_, decimal.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("not a decimal number: " + decimal);
}
Real::Real(const Real& other) {
  mpfr_init2(value_, std::max(mpfr_get_prec(other.value_), g_working_bits));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}
Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}
Real& Real::operator=(const Real& other) {
  if (this != &other) {
    if (mpfr_get_prec(value_) < mpfr_get_prec(other.value_))
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}
Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}
Real::~Real() { mpfr_clear(value_); }

Real& Real::operator+=(const Real& o) {
  mpfr_add(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  mpfr_sub(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  mpfr_mul(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  mpfr_div(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.value_, r.value_, MPFR_RNDN);
  return r;
}

std::string Real::str(int digits, mpfr_rnd_t rnd) const {
  if (!mpfr_number_p(value_)) return mpfr_inf_p(value_) ? (sign() > 0 ? "inf" : "-inf") : "nan";
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  int n = mpfr_snprintf(buf.data(), buf.size(), "%.*R*g", digits, rnd, value_);
  if (n >= static_cast<int>(buf.size())) {
    buf.resize(static_cast<std::size_t>(n) + 1);
    mpfr_snprintf(buf.data(), buf.size(), "%.*R*g", digits, rnd, value_);
  }
  return std::string(buf.data());
}

std::string Real::fixed_floor(int places) const {
  std::vector<char> buf(static_cast<std::size_t>(places) + 64);
  int n = mpfr_snprintf(buf.data(), buf.size(), "%.*RDf", places, value_);
  if (n >= static_cast<int>(buf.size())) {
    buf.resize(static_cast<std::size_t>(n) + 1);
    mpfr_snprintf(buf.data(), buf.size(), "%.*RDf", places, value_);
  }
  return std::string(buf.data());
}

Real Real::infinity() {
  Real r;
  mpfr_set_inf(r.value_, 1);
  return r;
}

Real operator+(Real a, const Real& b) { return a += b; }
Real operator-(Real a, const Real& b) { return a -= b; }
Real operator*(Real a, const Real& b) { return a *= b; }
Real operator/(Real a, const Real& b) { return a /= b; }

bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.get(), b.get()) != 0; }
bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }

namespace {
template <typename F>
Real unary(const Real& x, F f) {
  Real r(x);
  f(r.get(), x.get(), MPFR_RNDN);
  return r;
}
}  // namespace

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real expm1(const Real& x) { return unary(x, mpfr_expm1); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real log1p(const Real& x) { return unary(x, mpfr_log1p); }
Real log10(const Real& x) { return unary(x, mpfr_log10); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }

Real floor(const Real& x) {
  Real r(x);
  mpfr_floor(r.get(), x.get());
  return r;
}

Real log2_const() {
  Real r;
  mpfr_const_log2(r.get(), MPFR_RNDN);
  return r;
}

Real pi_const() {
  Real r;
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r(x);
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, long n) {
  Real r(x);
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

// --- exact helpers declared in bigint.hpp -----------------------------------

long floor_log10(const BigInt& x) {
  if (x <= 0) throw std::domain_error("floor_log10 of non-positive value");
  long d = static_cast<long>(mpz_sizeinbase(x.get_mpz_t(), 10)) - 1;  // d or d+1
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(d));
  if (p > x) --d;
  return d;
}

long certified_digits(const Rational& width) {
  if (width <= 0) throw std::domain_error("certified_digits of non-positive width");
  // width <= 10^-d  <=>  den >= num * 10^d  <=>  d <= log10(den/num)
  const BigInt& num = width.get_num();
  const BigInt& den = width.get_den();
  if (num >= den) return 0;
  BigInt q = den / num;  // floor; 10^d <= den/num iff 10^d <= floor(den/num)
  return floor_log10(q);
}

}  // namespace emcf
