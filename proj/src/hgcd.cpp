// Divide-and-conquer Euclidean reduction with exact quotient sequences.
//
// reduce(a, b, s) returns exactly the quotients Euclid would produce on (a, b)
// while the divisor stays >= 2^s. Each round solves a truncated problem
// (the top bits of the current pair) recursively, lifts the resulting matrix
// to the full pair, and drops trailing quotients until the lifted remainders
// satisfy alpha > beta >= 0. That condition holds iff the accepted quotients
// are a prefix of the true quotient sequence, so correctness never depends on
// how the truncation point was chosen; only the running time does.

#include <stdexcept>

#include "emcf/cf.hpp"

namespace emcf::hgcd {

namespace {

constexpr std::size_t kBaseGap = 192;  // bits shed by plain Euclid steps
constexpr std::size_t kGuard = 32;

bool below(const BigInt& x, std::size_t s) { return bit_length(x) <= s; }  // x < 2^s

void push_quotient(Reduction& r, const BigInt& q) {
  r.quotients.push_back(q);
  // M <- M [[q, 1], [1, 0]]
  BigInt t0 = r.matrix.m00 * q + r.matrix.m01;
  BigInt t1 = r.matrix.m10 * q + r.matrix.m11;
  r.matrix.m01 = std::move(r.matrix.m00);
  r.matrix.m11 = std::move(r.matrix.m10);
  r.matrix.m00 = std::move(t0);
  r.matrix.m10 = std::move(t1);
}

void euclid_step(Reduction& r) {
  BigInt q;
  BigInt rem;
  mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), r.alpha.get_mpz_t(), r.beta.get_mpz_t());
  r.alpha = std::move(r.beta);
  r.beta = std::move(rem);
  push_quotient(r, q);
}

void pop_quotient(Reduction& r) {
  const std::size_t last = r.quotients.size() - 1;
  const BigInt q = r.quotients.at(last);
  r.quotients.pop_back();
  // (alpha, beta) <- (q alpha + beta, alpha); M <- M [[0, 1], [1, -q]]
  BigInt prev = q * r.alpha + r.beta;
  r.beta = std::move(r.alpha);
  r.alpha = std::move(prev);
  BigInt t0 = r.matrix.m00 - q * r.matrix.m01;
  BigInt t1 = r.matrix.m10 - q * r.matrix.m11;
  r.matrix.m00 = std::move(r.matrix.m01);
  r.matrix.m10 = std::move(r.matrix.m11);
  r.matrix.m01 = std::move(t0);
  r.matrix.m11 = std::move(t1);
}

bool valid_pair(const Reduction& r) { return r.alpha > r.beta && r.beta >= 0; }

Matrix multiply(const Matrix& a, const Matrix& b) {
  Matrix r;
  r.m00 = a.m00 * b.m00 + a.m01 * b.m10;
  r.m01 = a.m00 * b.m01 + a.m01 * b.m11;
  r.m10 = a.m10 * b.m00 + a.m11 * b.m10;
  r.m11 = a.m10 * b.m01 + a.m11 * b.m11;
  return r;
}

// Lifts `sub` (a reduction of (alpha >> k, beta >> k)) to the full pair held
// in `r`, then trims quotients that are not valid for the full pair or that
// overshoot the stop threshold. Returns the number of quotients kept.
std::size_t lift(Reduction& r, Reduction&& sub, const BigInt& lo_a, const BigInt& lo_b, std::size_t k,
                 std::size_t stop_bits) {
  const std::size_t added = sub.quotients.size();
  if (added == 0) return 0;
  const Matrix& s = sub.matrix;
  // S^-1 = det * [[s11, -s01], [-s10, s00]], det = (-1)^added
  BigInt da = s.m11 * lo_a - s.m01 * lo_b;
  BigInt db = s.m00 * lo_b - s.m10 * lo_a;
  if (added % 2 == 1) {
    da = -da;
    db = -db;
  }
  r.alpha = (sub.alpha << k) + da;
  r.beta = (sub.beta << k) + db;
  r.matrix = multiply(r.matrix, s);
  r.quotients.append(sub.quotients);

  std::size_t kept = added;
  while (kept > 0 && !valid_pair(r)) {
    pop_quotient(r);
    --kept;
  }
  while (kept > 0 && below(r.alpha, stop_bits)) {
    pop_quotient(r);
    --kept;
  }
  return kept;
}

}  // namespace

Reduction reduce(const BigInt& a, const BigInt& b, std::size_t stop_bits) {
  if (b < 0 || a < b) throw std::invalid_argument("hgcd::reduce requires a >= b >= 0");
  Reduction r;
  r.alpha = a;
  r.beta = b;
  while (!below(r.beta, stop_bits)) {
    const std::size_t n = bit_length(r.alpha);
    const std::size_t gap = n - stop_bits;
    if (gap <= kBaseGap) {
      while (!below(r.beta, stop_bits)) euclid_step(r);
      break;
    }
    const std::size_t target = stop_bits + gap / 2;
    const std::size_t k = (2 * target > n + 2 * kGuard) ? 2 * target - n - 2 * kGuard : 0;

    std::size_t kept = 0;
    if (k == 0) {
      Reduction sub = reduce(r.alpha, r.beta, target);
      kept = lift(r, std::move(sub), BigInt(0), BigInt(0), 0, stop_bits);
    } else {
      BigInt hi_a = r.alpha >> k;
      BigInt hi_b = r.beta >> k;
      BigInt lo_a = r.alpha - (hi_a << k);
      BigInt lo_b = r.beta - (hi_b << k);
      Reduction sub = reduce(hi_a, hi_b, target - k);
      kept = lift(r, std::move(sub), lo_a, lo_b, k, stop_bits);
    }
    if (kept == 0) euclid_step(r);
  }
  return r;
}

}  // namespace emcf::hgcd
