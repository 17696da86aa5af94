#pragma once

// Continued-fraction extraction and convergent streaming.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "emcf/bigint.hpp"
#include "emcf/logcomp.hpp"
#include "emcf/quotients.hpp"

namespace emcf {

class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CfMethod { quadratic, hgcd };

/// Regular continued fraction of a non-negative rational by the Euclidean
/// algorithm. When `stop_bits` > 0 the expansion stops before the first
/// division whose divisor is below 2^stop_bits (the later terms depend on
/// low-order bits that an enclosing interval does not determine).
PartialQuotients cf_quadratic(const Rational& value, std::size_t max_terms = SIZE_MAX,
                              std::size_t stop_bits = 0);

/// Same term sequence as cf_quadratic, computed by divide-and-conquer
/// half-GCD reduction.
PartialQuotients cf_fast(const Rational& value, std::size_t max_terms = SIZE_MAX,
                         std::size_t stop_bits = 0);

PartialQuotients cf_expand(const Rational& value, CfMethod method, std::size_t max_terms = SIZE_MAX,
                           std::size_t stop_bits = 0);

struct CertifyOptions {
  CfMethod method = CfMethod::hgcd;
  bool parallel = true;
};

/// Partial quotients shared by every real in `iv`: the common prefix of the
/// expansions of both endpoints, less one term of safety margin (no margin
/// for a degenerate interval lo == hi).
PartialQuotients cf_certified(const RationalInterval& iv, std::size_t max_terms = SIZE_MAX,
                              const CertifyOptions& options = {});

namespace hgcd {

/// 2x2 matrix [[m00, m01], [m10, m11]], a product of [[q, 1], [1, 0]] factors.
struct Matrix {
  BigInt m00 = 1, m01 = 0;
  BigInt m10 = 0, m11 = 1;
};

/// Outcome of emulating Euclid on (a, b) while the divisor b >= 2^stop_bits:
/// (a, b)^T = matrix * (alpha, beta)^T.
struct Reduction {
  PartialQuotients quotients;
  Matrix matrix;
  BigInt alpha;
  BigInt beta;
};

/// Requires a >= b >= 0.
Reduction reduce(const BigInt& a, const BigInt& b, std::size_t stop_bits);

}  // namespace hgcd

// --- convergents -------------------------------------------------------------

/// Decimal magnitude mantissa * 10^exponent, mantissa in [1, 10).
struct DecimalMagnitude {
  long double mantissa = 1.0L;
  std::int64_t exponent = 0;

  /// floor(mantissa * 10^6), in [10^6, 10^7).
  std::int64_t mantissa_micro() const;
  long double log10() const;
};

/// floor(x * 10^-e) digits of an exact positive integer: mantissa rounded down.
DecimalMagnitude exact_magnitude(const BigInt& x);

/// Snapshot of the convergent recurrence at index j.
struct ConvergentState {
  std::size_t j = 0;
  DecimalMagnitude q;
  DecimalMagnitude q_prev;
  std::vector<std::uint64_t> moduli;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> residues;  // (q_j mod M, q_{j-1} mod M)
  int parity = 0;

  std::uint64_t residue(std::uint64_t modulus) const;
};

/// Single-owner iterator over q_j for j = 0, 1, ..., seeded with q_{-1} = 0,
/// q_0 = 1. Magnitudes are tracked in extended precision with a shared binary
/// exponent; residues exactly.
class ConvergentStream {
 public:
  ConvergentStream(const PartialQuotients& terms, std::vector<std::uint64_t> moduli);

  std::size_t index() const { return j_; }
  /// Number of states the stream will yield (the certified count).
  std::size_t length() const { return length_; }
  /// Moves to j+1; returns false at the end of the certified prefix.
  bool advance();

  DecimalMagnitude magnitude() const;
  DecimalMagnitude previous_magnitude() const;
  /// log2 of q_j estimate.
  long double log2_q() const;
  std::uint64_t residue_at(std::size_t slot) const { return cur_[slot]; }
  const std::vector<std::uint64_t>& moduli() const { return moduli_; }
  ConvergentState snapshot() const;

 private:
  const PartialQuotients& terms_;
  std::vector<std::uint64_t> moduli_;
  std::vector<std::uint64_t> cur_;
  std::vector<std::uint64_t> prev_;
  std::size_t length_;
  std::size_t j_ = 0;
  long double mag_cur_ = 1.0L;
  long double mag_prev_ = 0.0L;
  std::int64_t exp2_ = 0;
};

/// All states j = 0 .. certified_count-1 (for tests and small inputs).
std::vector<ConvergentState> stream_convergents(const PartialQuotients& terms,
                                                const std::vector<std::uint64_t>& moduli);

/// Exact (p_j, q_j) by a product tree over the first j+1 terms.
std::pair<BigInt, BigInt> reconstruct_exact(const PartialQuotients& terms, std::size_t j,
                                            bool parallel = true);

}  // namespace emcf
