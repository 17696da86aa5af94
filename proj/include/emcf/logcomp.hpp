#pragma once

// Certified rational enclosures of log 2 and log(1 + 1/t).

#include <cstdint>
#include <stdexcept>
#include <string>

#include "emcf/bigint.hpp"

namespace emcf {

/// Requested work exceeds a configured resource ceiling.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed interval [lo, hi] of exact rationals that provably contains a real
/// constant. Invariant: 0 < lo <= hi and hi - lo <= 10^-digits_valid.
struct RationalInterval {
  Rational lo;
  Rational hi;
  long digits_valid = 0;

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const RationalInterval& other) const { return lo <= other.lo && other.hi <= hi; }
  bool overlaps(const RationalInterval& other) const { return lo <= other.hi && other.lo <= hi; }

  /// Throws std::logic_error if the ordering or width contract is broken.
  void check() const;
};

enum class Log2Formula {
  automatic,  // atanh(1/3) below the fast-path threshold, Machin-like above it
  atanh_third,
  machin3,
};

struct LogOptions {
  long max_digits = 50'000'000;
  long machin_threshold = 1'000'000;
  Log2Formula formula = Log2Formula::automatic;
  bool parallel = true;
};

/// Enclosure of log 2 with digits_valid >= digits.
RationalInterval compute_log2(long digits, const LogOptions& options = {});

/// Enclosure of log(1 + 1/t) = 2 atanh(1/(2t+1)) with digits_valid >= digits.
RationalInterval compute_log_ratio(std::uint64_t t, long digits, const LogOptions& options = {});

/// [lo/denominator, hi/denominator]; digits_valid recomputed from the exact width.
RationalInterval scale_interval(const RationalInterval& iv, const BigInt& denominator);

/// Enclosure of atanh(1/x) as [L, L+2] / 2^bits.
RationalInterval atanh_inverse(std::uint64_t x, std::size_t bits, bool parallel = true);

/// Decimal digit record of a constant, the unit stored in the digit cache.
///
/// `expansion` is the midpoint written with digits+2 fractional places; the
/// certified interval is expansion +/- 10^-(digits+1).
struct DigitRecord {
  std::string constant;  // "log2" or "log1p:<t>"
  long digits = 0;
  std::string expansion;

  Rational midpoint() const;
  RationalInterval interval() const;
};

/// Truncates a sufficiently narrow enclosure to a digit record.
DigitRecord make_digit_record(const RationalInterval& iv, const std::string& constant, long digits);

/// Computes the named constant ("log2" or "log1p:<t>") and returns its record.
DigitRecord compute_digit_record(const std::string& constant, long digits, const LogOptions& options = {});

}  // namespace emcf
