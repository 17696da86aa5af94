#include "emcf/quotients.hpp"

#include <algorithm>
#include <stdexcept>

namespace emcf {

PartialQuotients::PartialQuotients(std::vector<std::uint64_t> terms) : words_(std::move(terms)) {
  if (std::find(words_.begin(), words_.end(), kOverflow) != words_.end())
    throw std::invalid_argument("reserved word value in term list");
  certified_ = words_.size();
}

void PartialQuotients::push_back(std::uint64_t a) {
  if (a == kOverflow) {
    push_back(from_u64(a));
    return;
  }
  words_.push_back(a);
}

void PartialQuotients::push_back(const BigInt& a) {
  if (a < 0) throw std::invalid_argument("negative partial quotient");
  if (fits_u64(a) && to_u64(a) != kOverflow) {
    words_.push_back(to_u64(a));
  } else {
    big_.emplace(words_.size(), a);
    words_.push_back(kOverflow);
  }
}

void PartialQuotients::pop_back() {
  if (words_.empty()) throw std::out_of_range("pop_back on empty term list");
  if (words_.back() == kOverflow) big_.erase(words_.size() - 1);
  words_.pop_back();
  certified_ = std::min(certified_, words_.size());
}

void PartialQuotients::truncate(std::size_t n) {
  if (n >= words_.size()) return;
  big_.erase(big_.lower_bound(n), big_.end());
  words_.resize(n);
  certified_ = std::min(certified_, n);
}

void PartialQuotients::append(const PartialQuotients& other) {
  for (std::size_t i = 0; i < other.size(); ++i) {
    if (other.is_small(i)) {
      words_.push_back(other.word(i));
    } else {
      push_back(other.at(i));
    }
  }
}

BigInt PartialQuotients::at(std::size_t i) const {
  if (i >= words_.size()) throw std::out_of_range("partial quotient index out of range");
  if (words_[i] != kOverflow) return from_u64(words_[i]);
  return big_.at(i);
}

std::uint64_t PartialQuotients::mod(std::size_t i, std::uint64_t m) const {
  if (words_[i] != kOverflow) return words_[i] % m;
  return mod_u64(big_.at(i), m);
}

void PartialQuotients::set_certified_count(std::size_t n) {
  if (n > words_.size()) throw std::invalid_argument("certified count exceeds term count");
  certified_ = n;
}

PartialQuotients PartialQuotients::prefix(std::size_t n) const {
  PartialQuotients r = *this;
  r.truncate(n);
  r.certified_ = r.size();
  return r;
}

std::size_t common_prefix_length(const PartialQuotients& a, const PartialQuotients& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n) {
    if (a.word(i) != b.word(i)) break;
    if (a.word(i) == PartialQuotients::kOverflow && a.at(i) != b.at(i)) break;
    ++i;
  }
  return i;
}

}  // namespace emcf
