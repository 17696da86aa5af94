#pragma once

// Owning MPFR value with value semantics. Precision is fixed per object at
// construction; the thread-local working precision is used when none is given.

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

#include "emcf/bigint.hpp"

namespace emcf {

/// Bits corresponding to a number of decimal digits (rounded up).
mpfr_prec_t digits_to_bits(int digits);

/// Thread-local default precision for newly created Real values.
mpfr_prec_t working_precision();
void set_working_precision(mpfr_prec_t bits);

/// Scoped change of the thread-local working precision.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(int decimal_digits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  mpfr_prec_t saved_;
};

class Real {
 public:
  Real();
  Real(double v);  // NOLINT: implicit for literal ergonomics
  Real(long v);    // NOLINT
  Real(int v) : Real(static_cast<long>(v)) {}  // NOLINT
  explicit Real(const BigInt& v);
  explicit Real(const Rational& v);
  explicit Real(const std::string& decimal);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real operator-() const;

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(value_, MPFR_RNDN); }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  /// Fixed-notation decimal string with `digits` significant digits.
  std::string str(int digits = 20, mpfr_rnd_t rnd = MPFR_RNDN) const;
  /// Decimal string with `places` digits after the point, rounded toward -inf.
  std::string fixed_floor(int places) const;

  static Real infinity();

 private:
  mpfr_t value_;
};

Real operator+(Real a, const Real& b);
Real operator-(Real a, const Real& b);
Real operator*(Real a, const Real& b);
Real operator/(Real a, const Real& b);

bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);
bool operator==(const Real& a, const Real& b);

Real abs(const Real& x);
Real exp(const Real& x);
Real expm1(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real log10(const Real& x);
Real log2_const();
Real pi_const();
Real sqrt(const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real floor(const Real& x);

}  // namespace emcf
