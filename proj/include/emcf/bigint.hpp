#pragma once

// Thin helpers over gmpxx. All exact integer and rational arithmetic in the
// project goes through mpz_class / mpq_class.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace emcf {

using BigInt = mpz_class;
using Rational = mpq_class;

inline std::size_t bit_length(const BigInt& x) {
  return mpz_sgn(x.get_mpz_t()) == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

inline BigInt from_u64(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return r;
}

inline bool fits_u64(const BigInt& x) {
  return mpz_sgn(x.get_mpz_t()) >= 0 && bit_length(x) <= 64;
}

inline std::uint64_t to_u64(const BigInt& x) {
  if (!fits_u64(x)) throw std::overflow_error("integer does not fit in 64 bits");
  std::uint64_t v = 0;
  mpz_export(&v, nullptr, -1, sizeof(v), 0, 0, x.get_mpz_t());
  return v;
}

inline BigInt pow_ui(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigInt pow2(std::size_t e) {
  BigInt r;
  mpz_setbit(r.get_mpz_t(), e);
  return r;
}

inline std::uint64_t mod_u64(const BigInt& x, std::uint64_t m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), from_u64(m).get_mpz_t());
  return to_u64(r);
}

inline BigInt parse_bigint(const std::string& s) {
  BigInt r;
  if (s.empty() || r.set_str(s, 10) != 0) throw std::invalid_argument("not an integer: " + s);
  return r;
}

/// Largest d with x <= 10^-d, for 0 < x < 1 (returns 0 when x >= 1/10 or x >= 1).
long certified_digits(const Rational& width);

/// floor(log10(x)) for x > 0, exact.
long floor_log10(const BigInt& x);

}  // namespace emcf
