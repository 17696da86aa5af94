#include <doctest.h>

#include <algorithm>

#include "emcf/real.hpp"
#include "emcf/scanner.hpp"
#include "oracles.hpp"

using namespace emcf;

namespace {

struct Row {
  long N;
  std::size_t j;
  const char* a_next;
  std::int64_t mantissa;
  std::int64_t exponent;
  int mod6;
  std::uint64_t prime;
};

const Row kRows[] = {
    {1, 642, "764", 2383153, 330, -1, 149},     {2, 664, "1529", 2383153, 330, -1, 149},
    {4, 1254, "21966", 1132014, 638, 1, 5},    {8, 1264, "43933", 1132014, 638, 1, 5},
    {16, 1280, "87866", 1132014, 638, 1, 5},   {32, 1294, "175733", 1132014, 638, 1, 5},
};

ScanConfig config(long N, long digits = 2000) {
  ScanConfig cfg;
  cfg.N = N;
  cfg.digit_budget = digits;
  return cfg;
}

}  // namespace

TEST_SUITE("scanner") {
  TEST_CASE("first candidate rows for N = 1 .. 32") {
    for (const auto& e : kRows) {
      const auto r = run_scan(config(e.N));
      const TableRow* row = r.first_candidate();
      REQUIRE(row != nullptr);
      INFO(row->format());
      CHECK(row->j == e.j);
      CHECK(row->a_next == BigInt(e.a_next));
      CHECK(std::llabs(row->q_mantissa_micro - e.mantissa) <= 1);
      CHECK(row->q_exponent == e.exponent);
      CHECK(row->q_mod6 == e.mod6);
      REQUIRE(row->violating_prime);
      CHECK(*row->violating_prime == e.prime);
      CHECK(row->exact_magnitude);
    }
  }

  TEST_CASE("N = 1: accepted row and its conditions from an independent stream") {
    const auto cfg = config(1);
    const auto r = run_scan(cfg);
    REQUIRE(r.status == ScanStatus::accepted);
    REQUIRE(r.accepted);
    const auto& acc = *r.accepted;
    CHECK(acc.j == 872);
    CHECK(acc.j % 2 == 0);
    CHECK(acc.a_next >= cfg.threshold());
    CHECK(!acc.violating_prime);

    const auto rec = compute_digit_record("log2", cfg.digit_budget);
    const auto terms = scan_terms_from_digits(rec, cfg.N, CfMethod::quadratic, false);
    const auto profiles = prime_set(cfg.N, cfg.prime_bound);
    std::vector<std::uint64_t> moduli{6};
    for (const auto& p : profiles) moduli.push_back(p.tracking_modulus);
    const auto states = stream_convergents(terms, moduli);

    // Every (a)-(c) row before the accepted one has a genuine violation.
    for (const auto& row : r.candidates) {
      if (!row.order_checked) continue;
      const auto rep = check_conditions(states[row.j], terms.at(row.j + 1), cfg, profiles);
      CHECK(rep.candidate());
      CHECK(rep.accepted() == !row.violating_prime.has_value());
      if (row.violating_prime) {
        REQUIRE(!rep.order_violations.empty());
        CHECK(rep.order_violations.front().p == *row.violating_prime);
        // Independent check against the exact denominator.
        const BigInt q = reconstruct_exact(terms, row.j, false).second;
        const auto& viol = rep.order_violations.front();
        CHECK(valuation(q, viol.p) >= 1);
        if (!viol.at_least) CHECK(valuation(q, viol.p) == viol.observed);
        CHECK(valuation(q, viol.p) != viol.required);
      }
    }
    const BigInt q = reconstruct_exact(terms, acc.j, false).second;
    for (const auto& p : profiles) {
      const int v = mpz_divisible_ui_p(q.get_mpz_t(), p.p) ? valuation(q, p.p) : 0;
      CHECK((v == 0 || v == p.required_order));
    }
    CHECK(mod_u64(q, 6) == (acc.q_mod6 == 1 ? 1u : 5u));
    const auto mag = exact_magnitude(q);
    CHECK(mag.mantissa_micro() == acc.q_mantissa_micro);
    CHECK(mag.exponent == acc.q_exponent);

    // Nothing between two consecutive candidates satisfies (a)-(c).
    for (std::size_t j = 0; j + 1 < terms.certified_count() && j <= acc.j; ++j) {
      const auto rep = check_conditions(states[j], terms.at(j + 1), cfg, profiles);
      const bool listed = std::any_of(r.candidates.begin(), r.candidates.end(),
                                      [&](const TableRow& row) { return row.j == j; });
      CHECK(rep.candidate() == listed);
    }
  }

  TEST_CASE("quadratic and half-GCD paths give the same scan") {
    auto a = config(4), b = config(4);
    a.method = CfMethod::quadratic;
    a.parallel = false;
    const auto ra = run_scan(a), rb = run_scan(b);
    REQUIRE(ra.candidates.size() == rb.candidates.size());
    for (std::size_t i = 0; i < ra.candidates.size(); ++i) CHECK(ra.candidates[i].format() == rb.candidates[i].format());
    CHECK(ra.certified_terms == rb.certified_terms);
  }

  TEST_CASE("larger prime bound never accepts earlier") {
    for (long N : {1L, 2L, 4L}) {
      std::optional<std::size_t> prev;
      for (std::uint64_t bound : {50ULL, 500ULL, 5000ULL, 100000ULL}) {
        auto cfg = config(N);
        cfg.prime_bound = bound;
        const auto r = run_scan(cfg);
        if (!r.accepted) break;
        if (prev) CHECK(r.accepted->j >= *prev);
        prev = r.accepted->j;
      }
    }
  }

  TEST_CASE("budget exhaustion returns partial candidates") {
    ScanConfig cfg;
    cfg.N = BigInt(256) * 243 * 125;
    cfg.digit_budget = 3000;
    const auto r = run_scan(cfg);
    CHECK(r.status == ScanStatus::budget_exhausted);
    CHECK(!r.accepted);
    CHECK(!r.bound);
    CHECK(r.certified_terms > 1000);
    CHECK(to_string(r.status) == "budget_exhausted");

    cfg.N = pow_ui(BigInt(10), 5000);
    const auto tiny = run_scan(cfg);
    CHECK(tiny.status == ScanStatus::budget_exhausted);

    const auto short_run = run_scan(config(1, 50));
    CHECK(short_run.status == ScanStatus::budget_exhausted);

    // Digit budgets beyond the ceiling are reported, not computed.
    cfg.N = BigInt(256) * 243 * 125;
    cfg.digit_budget = 3'400'000'000L;
    const auto huge = run_scan(cfg);
    CHECK(huge.status == ScanStatus::budget_exhausted);
    CHECK(huge.candidates.empty());
    CHECK(huge.note.find("exceeds") != std::string::npos);
  }

  TEST_CASE("candidates obey Legendre's bound and the reported m bound is valid") {
    for (long N : {1L, 4L}) {
      const auto cfg = config(N);
      INFO("N = ", N);
      const auto r = run_scan(cfg);
      REQUIRE(!r.candidates.empty());
      const auto rec = compute_digit_record("log2", cfg.digit_budget);
      const auto iv = scale_interval(rec.interval(), BigInt(2 * N));
      const auto terms = scan_terms_from_digits(rec, cfg.N, CfMethod::hgcd);
      for (const auto& row : r.candidates) {
        const auto [p, q] = reconstruct_exact(terms, row.j, false);
        const Rational conv(p, q);
        CHECK(iv.lo - conv > 0);
        CHECK(iv.hi - conv < Rational(BigInt(1), q * q));
      }
      if (!r.accepted) continue;
      const BigInt q = reconstruct_exact(terms, r.accepted->j, false).second;
      PrecisionGuard g(40);
      const Real exact = log10(Real(q)) - log10(Real(2L));
      CHECK(Real(r.bound->log10) <= exact + Real(1e-6));
      CHECK(Real(r.bound->log10) > exact - Real(1e-6));
    }
  }

  TEST_CASE("bound from a row halves q") {
    TableRow row;
    row.q_mantissa_micro = 5427815;
    row.q_exponent = 1667658416;
    auto b = bound_from_row(row);
    CHECK(b.str() == "2.713907e1667658416");
    row.q_mantissa_micro = 3458446;
    row.q_exponent = 4589;
    CHECK(bound_from_row(row).str() == "1.729223e4589");
    row.q_mantissa_micro = 1374540;
    row.q_exponent = 61317;
    b = bound_from_row(row);
    CHECK(b.str() == "6.872700e61316");
    CHECK(b.log10 == "61316.837127386");
    row.q_mantissa_micro = 999999;
    CHECK_THROWS(bound_from_row(row));
  }

  TEST_CASE("row formatting and configuration checks") {
    TableRow row;
    row.N = 1;
    row.j = 642;
    row.a_next = 764;
    row.q_mantissa_micro = 2383153;
    row.q_exponent = 330;
    row.q_mod6 = -1;
    row.violating_prime = 149;
    CHECK(row.format() == "1 | 642 | 764 | 2.383153 * 10^330 | -1 | 149");
    row.violating_prime.reset();
    row.q_mod6 = 1;
    CHECK(row.format() == "1 | 642 | 764 | 2.383153 * 10^330 | +1 | ");

    ScanConfig cfg;
    CHECK(cfg.threshold() == 178);
    cfg.N = 768;
    CHECK(cfg.threshold() == 138238);
    cfg.N = 0;
    CHECK_THROWS(cfg.validate());
    cfg.N = 1;
    cfg.prime_bound = 3;
    CHECK_THROWS(cfg.validate());
    cfg.prime_bound = 5;
    cfg.digit_budget = 0;
    CHECK_THROWS(cfg.validate());
  }
}
