#include <doctest.h>

#include <random>

#include "emcf/cf.hpp"
#include "emcf/kernels.hpp"
#include "emcf/logcomp.hpp"
#include "oracles.hpp"

using namespace emcf;

namespace {

PartialQuotients random_terms(std::mt19937_64& rng, std::size_t n, bool with_big) {
  PartialQuotients t;
  for (std::size_t i = 0; i < n; ++i) {
    const auto roll = rng() % 100;
    if (with_big && roll == 0) {
      t.push_back(pow2(64 + rng() % 100) + from_u64(rng()));
    } else if (roll < 3) {
      t.push_back(rng());
    } else {
      t.push_back(1 + rng() % 30);
    }
  }
  t.set_certified_count(t.size());
  return t;
}

std::vector<BigInt> q_values(const PartialQuotients& t) {
  std::vector<BigInt> a;
  for (std::size_t i = 0; i < t.size(); ++i) a.push_back(t.at(i));
  std::vector<BigInt> q;
  for (const auto& pq : oracle::convergents(a)) q.push_back(pq.second);
  return q;
}

// One modulus per size class the residue kernel distinguishes.
const std::vector<std::uint64_t> kModuli{
    2, 6, 125, 1'000'003, (1ULL << 32) - 5, (1ULL << 32) + 15, 149ULL * 149 * 149 * 149 * 149,
    (1ULL << 50) - 27, (1ULL << 50) + 55, (1ULL << 61) - 1, (1ULL << 61) + 20, (1ULL << 63) + 29,
    18446744073709551557ULL};

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("atanh split: serial equals omp and matches the defining sum") {
    for (std::uint64_t x : {3ULL, 26ULL, 4801ULL}) {
      for (auto [lo, hi] : {std::pair<std::uint64_t, std::uint64_t>{0, 1}, {0, 17}, {5, 300}, {0, 2000}}) {
        const auto s = kernels::serial::atanh_split(x, lo, hi);
        const auto p = kernels::omp::atanh_split(x, lo, hi);
        CHECK(s.T == p.T);
        CHECK(s.B == p.B);
        CHECK(s.Q == p.Q);
        if (hi - lo <= 300) {
          Rational sum = 0;
          for (std::uint64_t k = lo; k < hi; ++k)
            sum += Rational(BigInt(1), from_u64(2 * k + 1) * pow_ui(from_u64(x), 2 * k));
          sum.canonicalize();
          Rational got(s.T, s.B * s.Q);
          got.canonicalize();
          // A segment starting at lo > 0 is scaled by x^(2 lo - 2).
          Rational scaled = lo == 0 ? sum : sum * Rational(pow_ui(from_u64(x), 2 * lo - 2));
          scaled.canonicalize();
          CHECK(got == scaled);
        }
      }
    }
  }

  TEST_CASE("convergent product: serial equals omp equals recurrence") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      const auto t = random_terms(rng, 50 + rng() % 3000, true);
      std::vector<BigInt> a;
      for (std::size_t i = 0; i < t.size(); ++i) a.push_back(t.at(i));
      const auto conv = oracle::convergents(a);
      const std::size_t hi = t.size();
      const auto s = kernels::serial::convergent_product(t, 0, hi);
      const auto p = kernels::omp::convergent_product(t, 0, hi);
      CHECK(s.p1 == p.p1);
      CHECK(s.q1 == p.q1);
      CHECK(s.p0 == p.p0);
      CHECK(s.q0 == p.q0);
      CHECK(s.p1 == conv.back().first);
      CHECK(s.q1 == conv.back().second);
      CHECK(s.q0 == conv[hi - 2].second);
      // Segments compose by matrix multiplication.
      const std::size_t mid = hi / 2;
      const auto l = kernels::serial::convergent_product(t, 0, mid);
      const auto r = kernels::omp::convergent_product(t, mid, hi);
      CHECK(l.q1 * r.p1 + l.q0 * r.q1 == s.q1);
    }
  }

  TEST_CASE("residues in every modulus class match exact denominators") {
    std::mt19937_64 rng(11);
    const auto t = random_terms(rng, 1200, true);
    const auto q = q_values(t);
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < t.size(); j += 1 + rng() % 13) idx.push_back(j);
    idx.push_back(t.size() - 1);
    const auto s = kernels::serial::residues_at(t, kModuli, idx);
    const auto p = kernels::omp::residues_at(t, kModuli, idx);
    CHECK(s == p);
    REQUIRE(s.size() == kModuli.size());
    for (std::size_t m = 0; m < kModuli.size(); ++m) {
      REQUIRE(s[m].size() == idx.size());
      const auto single = kernels::residues_for_modulus(t, kModuli[m], idx);
      CHECK(single == s[m]);
      for (std::size_t i = 0; i < idx.size(); ++i) REQUIRE(s[m][i] == mod_u64(q[idx[i]], kModuli[m]));
    }
  }

  TEST_CASE("residue kernel on the log 2 stream with many moduli") {
    const auto terms = cf_certified(compute_log2(1500));
    std::vector<BigInt> a;
    for (std::size_t i = 0; i < terms.certified_count(); ++i) a.push_back(terms.at(i));
    const auto conv = oracle::convergents(a);
    std::vector<std::uint64_t> moduli;
    for (std::uint64_t p = 5; p < 400; p += 2)
      if (oracle::trial_prime(p)) moduli.push_back(p * p * p);
    moduli.push_back(999'670'036'298'669ULL);
    std::vector<std::size_t> idx{0, 1, 2, 100, 642, 872, terms.certified_count() - 1};
    const auto table = kernels::omp::residues_at(terms, moduli, idx);
    CHECK(table == kernels::serial::residues_at(terms, moduli, idx));
    for (std::size_t m = 0; m < moduli.size(); ++m)
      for (std::size_t i = 0; i < idx.size(); ++i) REQUIRE(table[m][i] == mod_u64(conv[idx[i]].second, moduli[m]));
  }

  TEST_CASE("modulus 1 is rejected") {
    PartialQuotients t(std::vector<std::uint64_t>{0, 1, 2});
    t.set_certified_count(3);
    const std::vector<std::uint64_t> mods{1};
    const std::vector<std::size_t> idx{0};
    CHECK_THROWS(kernels::serial::residues_at(t, mods, idx));
  }

  TEST_CASE("empty index list and empty modulus list") {
    PartialQuotients t(std::vector<std::uint64_t>{0, 1, 2});
    t.set_certified_count(3);
    std::vector<std::uint64_t> none;
    std::vector<std::size_t> idx{0, 2};
    CHECK(kernels::omp::residues_at(t, none, idx).empty());
    const std::vector<std::uint64_t> mods{7};
    const auto r = kernels::serial::residues_at(t, mods, std::span<const std::size_t>{});
    REQUIRE(r.size() == 1);
    CHECK(r[0].empty());
  }
}
