#include <algorithm>
#include <cmath>

#include "emcf/cf.hpp"
#include "emcf/kernels.hpp"
#include "emcf/parallel.hpp"

namespace emcf {

namespace {

constexpr long double kLog10Of2 = 0.301029995663981195213738894724493027L;
constexpr int kRenormBits = 64;
constexpr std::size_t kParallelModuli = 256;

DecimalMagnitude from_log10(long double l10) {
  DecimalMagnitude m;
  long double e = std::floor(l10);
  m.exponent = static_cast<std::int64_t>(e);
  m.mantissa = std::pow(10.0L, l10 - e);
  if (m.mantissa >= 10.0L) {
    m.mantissa /= 10.0L;
    ++m.exponent;
  }
  if (m.mantissa < 1.0L) m.mantissa = 1.0L;
  return m;
}

DecimalMagnitude from_binary(long double mant, std::int64_t exp2) {
  if (mant <= 0.0L) return DecimalMagnitude{0.0L, 0};
  return from_log10(std::log10(mant) + static_cast<long double>(exp2) * kLog10Of2);
}

long double term_as_float(const PartialQuotients& terms, std::size_t i) {
  if (terms.is_small(i)) return static_cast<long double>(terms.word(i));
  long e = 0;
  const double m = mpz_get_d_2exp(&e, terms.at(i).get_mpz_t());
  return std::ldexp(static_cast<long double>(m), static_cast<int>(e));
}

}  // namespace

std::int64_t DecimalMagnitude::mantissa_micro() const {
  auto v = static_cast<std::int64_t>(std::floor(mantissa * 1.0e6L));
  return std::clamp<std::int64_t>(v, 1'000'000, 9'999'999);
}

long double DecimalMagnitude::log10() const { return std::log10(mantissa) + static_cast<long double>(exponent); }

DecimalMagnitude exact_magnitude(const BigInt& x) {
  if (x <= 0) throw std::domain_error("exact_magnitude of non-positive value");
  const long e = floor_log10(x);
  BigInt top;
  if (e >= 6) {
    top = x / pow_ui(BigInt(10), static_cast<unsigned long>(e - 6));
  } else {
    top = x * pow_ui(BigInt(10), static_cast<unsigned long>(6 - e));
  }
  DecimalMagnitude m;
  m.exponent = e;
  // Nudge into the floor bucket so mantissa_micro() reproduces `top` exactly.
  m.mantissa = (static_cast<long double>(top.get_si()) + 0.25L) / 1.0e6L;
  return m;
}

std::uint64_t ConvergentState::residue(std::uint64_t modulus) const {
  for (std::size_t i = 0; i < moduli.size(); ++i)
    if (moduli[i] == modulus) return residues[i].first;
  throw std::out_of_range("modulus not tracked: " + std::to_string(modulus));
}

ConvergentStream::ConvergentStream(const PartialQuotients& terms, std::vector<std::uint64_t> moduli)
    : terms_(terms), moduli_(std::move(moduli)), length_(terms.certified_count()) {
  for (auto m : moduli_)
    if (m < 2) throw std::invalid_argument("moduli must be at least 2");
  cur_.assign(moduli_.size(), 1);
  prev_.assign(moduli_.size(), 0);
}

bool ConvergentStream::advance() {
  if (j_ + 1 >= length_) return false;
  const std::size_t next = j_ + 1;
  const long double a = term_as_float(terms_, next);
  const long double nxt = a * mag_cur_ + mag_prev_;
  mag_prev_ = mag_cur_;
  mag_cur_ = nxt;
  if (mag_cur_ >= std::ldexp(1.0L, kRenormBits)) {
    mag_cur_ = std::ldexp(mag_cur_, -kRenormBits);
    mag_prev_ = std::ldexp(mag_prev_, -kRenormBits);
    exp2_ += kRenormBits;
  }

  const auto count = static_cast<long>(moduli_.size());
  auto update = [&](long i) {
    const std::uint64_t m = moduli_[i];
    const std::uint64_t am = terms_.mod(next, m);
    const auto v = static_cast<std::uint64_t>((static_cast<unsigned __int128>(am) * cur_[i] + prev_[i]) % m);
    prev_[i] = cur_[i];
    cur_[i] = v;
  };
  if (moduli_.size() >= kParallelModuli) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) update(i);
  } else {
    for (long i = 0; i < count; ++i) update(i);
  }
  j_ = next;
  return true;
}

DecimalMagnitude ConvergentStream::magnitude() const { return from_binary(mag_cur_, exp2_); }

DecimalMagnitude ConvergentStream::previous_magnitude() const {
  if (j_ == 0) return DecimalMagnitude{0.0L, 0};
  return from_binary(mag_prev_, exp2_);
}

long double ConvergentStream::log2_q() const { return std::log2(mag_cur_) + static_cast<long double>(exp2_); }

ConvergentState ConvergentStream::snapshot() const {
  ConvergentState s;
  s.j = j_;
  s.q = magnitude();
  s.q_prev = previous_magnitude();
  s.moduli = moduli_;
  s.residues.reserve(moduli_.size());
  for (std::size_t i = 0; i < moduli_.size(); ++i) s.residues.emplace_back(cur_[i], prev_[i] % moduli_[i]);
  s.parity = static_cast<int>(j_ % 2);
  return s;
}

std::vector<ConvergentState> stream_convergents(const PartialQuotients& terms,
                                                const std::vector<std::uint64_t>& moduli) {
  std::vector<ConvergentState> states;
  if (terms.certified_count() == 0) return states;
  ConvergentStream stream(terms, moduli);
  states.push_back(stream.snapshot());
  while (stream.advance()) states.push_back(stream.snapshot());
  return states;
}

std::pair<BigInt, BigInt> reconstruct_exact(const PartialQuotients& terms, std::size_t j, bool parallel) {
  if (j >= terms.certified_count()) throw std::out_of_range("convergent index beyond certified prefix");
  const auto m = parallel ? kernels::omp::convergent_product(terms, 0, j + 1)
                          : kernels::serial::convergent_product(terms, 0, j + 1);
  return {m.p1, m.q1};
}

}  // namespace emcf
