#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "emcf/bigint.hpp"

namespace emcf {

/// A finite prefix a_0, a_1, ..., a_r of a regular continued fraction.
///
/// Terms are stored as 64-bit words; the rare term that does not fit goes to a
/// side table and its slot holds `kOverflow`. Only the first `certified_count`
/// terms are claimed to be partial quotients of the source number.
class PartialQuotients {
 public:
  static constexpr std::uint64_t kOverflow = std::numeric_limits<std::uint64_t>::max();

  PartialQuotients() = default;
  explicit PartialQuotients(std::vector<std::uint64_t> terms);

  void push_back(std::uint64_t a);
  void push_back(const BigInt& a);
  void pop_back();
  void truncate(std::size_t n);
  void append(const PartialQuotients& other);

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }

  /// Raw word; equals kOverflow when the term lives in the side table.
  std::uint64_t word(std::size_t i) const { return words_[i]; }
  bool is_small(std::size_t i) const { return words_[i] != kOverflow; }
  BigInt at(std::size_t i) const;
  /// Term reduced modulo m (m >= 1).
  std::uint64_t mod(std::size_t i, std::uint64_t m) const;

  std::size_t certified_count() const { return certified_; }
  void set_certified_count(std::size_t n);

  /// First `n` terms as a new sequence, all certified.
  PartialQuotients prefix(std::size_t n) const;

  friend bool operator==(const PartialQuotients& a, const PartialQuotients& b) {
    return a.words_ == b.words_ && a.big_ == b.big_;
  }

 private:
  std::vector<std::uint64_t> words_;
  std::map<std::size_t, BigInt> big_;
  std::size_t certified_ = 0;
};

/// Length of the longest common prefix of two term sequences.
std::size_t common_prefix_length(const PartialQuotients& a, const PartialQuotients& b);

}  // namespace emcf
