#include "emcf/cf.hpp"

#include <algorithm>

namespace emcf {

namespace {

bool below(const BigInt& x, std::size_t s) { return bit_length(x) <= s; }

void check_value(const Rational& value) {
  if (value < 0) throw std::invalid_argument("continued fraction of a negative value");
}

// Bits of the Euclidean divisor below which an endpoint expansion no longer
// contributes certified terms: terms stay common to both endpoints only while
// q_j^2 * width < 1, and the divisor at step j is about den / q_{j+1}.
std::size_t endpoint_stop_bits(const Rational& endpoint, const Rational& width) {
  const std::size_t den_bits = bit_length(endpoint.get_den());
  const std::size_t inv_width_bits =
      bit_length(width.get_den()) > bit_length(width.get_num())
          ? bit_length(width.get_den()) - bit_length(width.get_num())
          : 0;
  const std::size_t keep = inv_width_bits / 2 + 64;
  return den_bits > keep ? den_bits - keep : 0;
}

}  // namespace

PartialQuotients cf_quadratic(const Rational& value, std::size_t max_terms, std::size_t stop_bits) {
  check_value(value);
  PartialQuotients out;
  BigInt a = value.get_num();
  BigInt b = value.get_den();
  BigInt q;
  BigInt r;
  while (b != 0 && !below(b, stop_bits) && out.size() < max_terms) {
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    out.push_back(q);
    a.swap(b);
    b.swap(r);
  }
  out.set_certified_count(out.size());
  return out;
}

PartialQuotients cf_fast(const Rational& value, std::size_t max_terms, std::size_t stop_bits) {
  check_value(value);
  PartialQuotients out;
  const BigInt& num = value.get_num();
  const BigInt& den = value.get_den();
  if (max_terms == 0 || below(den, stop_bits)) return out;
  BigInt a0;
  BigInt rem;
  mpz_tdiv_qr(a0.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  out.push_back(a0);
  if (rem != 0) {
    auto red = hgcd::reduce(den, rem, stop_bits);
    out.append(red.quotients);
  }
  out.truncate(max_terms);
  out.set_certified_count(out.size());
  return out;
}

PartialQuotients cf_expand(const Rational& value, CfMethod method, std::size_t max_terms,
                           std::size_t stop_bits) {
  return method == CfMethod::hgcd ? cf_fast(value, max_terms, stop_bits)
                                  : cf_quadratic(value, max_terms, stop_bits);
}

PartialQuotients cf_certified(const RationalInterval& iv, std::size_t max_terms, const CertifyOptions& options) {
  if (max_terms < 1) throw std::invalid_argument("max_terms must be at least 1");
  if (iv.lo > iv.hi || iv.lo < 0) throw std::invalid_argument("invalid interval");
  if (iv.lo == iv.hi) {
    auto exact = cf_expand(iv.lo, options.method, max_terms);
    exact.set_certified_count(exact.size());
    return exact;
  }
  const Rational width = iv.width();
  // Request one spare term so the safety margin does not eat into max_terms.
  const std::size_t want = max_terms == SIZE_MAX ? SIZE_MAX : max_terms + 1;
  const std::size_t stop_lo = endpoint_stop_bits(iv.lo, width);
  const std::size_t stop_hi = endpoint_stop_bits(iv.hi, width);
  PartialQuotients lo;
  PartialQuotients hi;
  if (options.parallel) {
#pragma omp parallel sections
    {
#pragma omp section
      lo = cf_expand(iv.lo, options.method, want, stop_lo);
#pragma omp section
      hi = cf_expand(iv.hi, options.method, want, stop_hi);
    }
  } else {
    lo = cf_expand(iv.lo, options.method, want, stop_lo);
    hi = cf_expand(iv.hi, options.method, want, stop_hi);
  }
  const std::size_t common = common_prefix_length(lo, hi);
  if (common < 2) throw CertificationError("interval endpoints disagree at the first partial quotient");
  const std::size_t certified = std::min(common - 1, max_terms);
  lo.truncate(certified);
  lo.set_certified_count(certified);
  return lo;
}

}  // namespace emcf
