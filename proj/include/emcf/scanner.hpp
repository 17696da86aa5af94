#pragma once

// Walks the certified convergents of (log 2)/(2N) and applies the four
// arithmetic conditions on (j, a_{j+1}, q_j) that turn a convergent into a
// lower bound m > q_j / 2 for a solution of 1^k + ... + (m-1)^k = m^k.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emcf/arithmetic.hpp"
#include "emcf/cf.hpp"
#include "emcf/logcomp.hpp"

namespace emcf {

struct ScanConfig {
  BigInt N = 1;
  long digit_budget = 2000;
  std::uint64_t prime_bound = 100'000;
  CfMethod method = CfMethod::hgcd;
  bool parallel = true;
  /// Rows with j at or below this index get exact q_j magnitudes.
  std::size_t exact_magnitude_limit = 20'000'000;
  LogOptions log_options{};

  /// 180 N - 2, the minimum admissible a_{j+1}.
  BigInt threshold() const { return 180 * N - 2; }
  void validate() const;
};

/// One prime whose observed order in q_j differs from the required one.
/// `observed` is exact when below required_order + 1; otherwise
/// `at_least` is set and observed == required_order + 1.
struct OrderViolation {
  std::uint64_t p = 0;
  int observed = 0;
  int required = 0;
  bool at_least = false;
};

struct ConditionReport {
  std::size_t j = 0;
  bool even_ok = false;
  bool quotient_ok = false;
  bool coprime6_ok = false;
  std::vector<OrderViolation> order_violations;

  bool order_ok() const { return order_violations.empty(); }
  bool candidate() const { return even_ok && quotient_ok && coprime6_ok; }
  bool accepted() const { return candidate() && order_ok(); }
};

/// Evaluates conditions (a)-(d) at a tracker state. The state must track the
/// modulus 6 and every profile's tracking modulus.
ConditionReport check_conditions(const ConvergentState& state, const BigInt& a_next, const ScanConfig& cfg,
                                 const std::vector<PrimeProfile>& profiles);

struct TableRow {
  BigInt N;
  std::size_t j = 0;
  BigInt a_next;
  std::int64_t q_mantissa_micro = 0;  // floor(mantissa * 10^6)
  std::int64_t q_exponent = 0;
  int q_mod6 = 0;                     // +1 or -1
  std::optional<std::uint64_t> violating_prime;
  bool order_checked = false;
  bool exact_magnitude = false;

  /// "2.383153"
  std::string mantissa_string() const;
  /// One line in the layout of the published table.
  std::string format() const;
};

/// Lower bound m > q_j / 2 as a floor-rounded decimal magnitude.
struct MBound {
  std::int64_t mantissa_micro = 0;
  std::int64_t exponent = 0;
  std::string log10;  // floor-rounded to 9 places

  std::string mantissa_string() const;
  std::string str() const;  // "2.713907e1667658416"
};

MBound bound_from_row(const TableRow& row);

enum class ScanStatus { accepted, budget_exhausted };

struct ScanResult {
  ScanStatus status = ScanStatus::budget_exhausted;
  std::vector<TableRow> candidates;
  std::optional<TableRow> accepted;
  std::optional<MBound> bound;
  std::size_t certified_terms = 0;
  std::size_t tracked_primes = 0;
  std::string note;  // set when the scan stopped before reading any terms

  /// First candidate row (the published table's row for this N).
  const TableRow* first_candidate() const { return candidates.empty() ? nullptr : &candidates.front(); }
};

/// Certified terms of (log 2)/(2N) from a digit record of log 2.
PartialQuotients scan_terms_from_digits(const DigitRecord& log2_digits, const BigInt& N, CfMethod method,
                                        bool parallel = true);

/// Scans an already certified term sequence of (log 2)/(2N).
ScanResult scan_terms(const PartialQuotients& terms, const ScanConfig& cfg);

/// Full pipeline: digits, certified terms, scan.
ScanResult run_scan(const ScanConfig& cfg);

std::string to_string(ScanStatus status);

}  // namespace emcf
