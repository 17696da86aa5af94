#include "emcf/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "emcf/arithmetic.hpp"
#include "emcf/asymptotics.hpp"
#include "emcf/cache.hpp"
#include "emcf/cf.hpp"
#include "emcf/kernels.hpp"
#include "emcf/logcomp.hpp"
#include "emcf/omega.hpp"
#include "emcf/scanner.hpp"

namespace emcf {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

struct Check {
  std::string suite;
  std::string name;
  bool full_only;
  std::function<Outcome()> run;
};

Outcome ok(std::string detail = {}) { return {true, std::move(detail)}; }
Outcome fail(std::string detail) { return {false, std::move(detail)}; }

struct ExpectedRow {
  long N;
  std::size_t j;
  const char* a_next;
  std::int64_t mantissa;
  std::int64_t exponent;
  int mod6;
  std::uint64_t prime;  // 0 = blank
  long digits;
};

Outcome table_row(const ExpectedRow& e) {
  ScanConfig cfg;
  cfg.N = e.N;
  cfg.digit_budget = e.digits;
  const auto result = run_scan(cfg);
  const TableRow* row = result.first_candidate();
  if (!row) return fail("no candidate row");
  std::ostringstream got;
  got << row->format();
  const bool prime_ok = e.prime == 0 ? !row->violating_prime.has_value()
                                     : row->violating_prime && *row->violating_prime == e.prime;
  const bool match = row->j == e.j && row->a_next == BigInt(e.a_next) &&
                     std::llabs(row->q_mantissa_micro - e.mantissa) <= 1 && row->q_exponent == e.exponent &&
                     row->q_mod6 == e.mod6 && prime_ok && row->order_checked;
  return {match, got.str()};
}

PartialQuotients log2_terms(long digits) {
  const auto rec = compute_digit_record("log2", digits);
  return cf_certified(rec.interval());
}

std::vector<Check> all_checks() {
  std::vector<Check> c;

  // logcomp
  c.push_back({"logcomp", "log2_two_series_agree_2000", false, [] {
                 LogOptions a, b;
                 a.formula = Log2Formula::atanh_third;
                 b.formula = Log2Formula::machin3;
                 const auto x = compute_log2(2000, a), y = compute_log2(2000, b);
                 return Outcome{x.overlaps(y), "overlap of atanh(1/3) and Machin-like enclosures"};
               }});
  c.push_back({"logcomp", "log2_width_contract", false, [] {
                 const auto iv = compute_log2(1500);
                 iv.check();
                 return Outcome{iv.width() <= Rational(BigInt(1), pow_ui(BigInt(10), 1500)), ""};
               }});
  c.push_back({"logcomp", "log_ratio_t1_matches_log2", false, [] {
                 return Outcome{compute_log_ratio(1, 500).overlaps(compute_log2(500)), ""};
               }});
  c.push_back({"logcomp", "digit_records_nest", false, [] {
                 const auto a = compute_digit_record("log2", 100).interval();
                 const auto b = compute_digit_record("log2", 300).interval();
                 return Outcome{a.contains(b), "300-digit record inside 100-digit record"};
               }});
  c.push_back({"logcomp", "kernel_atanh_serial_equals_omp", false, [] {
                 const auto s = kernels::serial::atanh_split(3, 0, 5000);
                 const auto p = kernels::omp::atanh_split(3, 0, 5000);
                 return Outcome{s.T == p.T && s.B == p.B && s.Q == p.Q, ""};
               }});
  c.push_back({"logcomp", "log2_two_series_agree_10000", true, [] {
                 LogOptions a, b;
                 a.formula = Log2Formula::atanh_third;
                 b.formula = Log2Formula::machin3;
                 return Outcome{compute_log2(10000, a).overlaps(compute_log2(10000, b)), ""};
               }});

  // cf-engine
  c.push_back({"cf", "hgcd_matches_quadratic_random", false, [] {
                 std::mt19937_64 rng(12345);
                 for (int i = 0; i < 200; ++i) {
                   BigInt num = 0, den = 0;
                   const int words = 1 + static_cast<int>(rng() % 40);
                   for (int w = 0; w < words; ++w) {
                     num = (num << 64) + from_u64(rng());
                     den = (den << 64) + from_u64(rng());
                   }
                   if (den == 0) den = 1;
                   Rational v(num, den);
                   v.canonicalize();
                   if (!(cf_quadratic(v) == cf_fast(v))) return fail("mismatch at sample " + std::to_string(i));
                 }
                 return ok("200 samples");
               }});
  c.push_back({"cf", "convergent_determinant", false, [] {
                 const auto terms = log2_terms(400);
                 for (std::size_t j = 1; j < 300; ++j) {
                   const auto [p1, q1] = reconstruct_exact(terms, j, false);
                   const auto [p0, q0] = reconstruct_exact(terms, j - 1, false);
                   const BigInt det = p1 * q0 - p0 * q1;
                   if (det != (j % 2 == 0 ? -1 : 1)) return fail("j = " + std::to_string(j));
                 }
                 return ok();
               }});
  c.push_back({"cf", "even_convergents_below_odd_above", false, [] {
                 const auto rec = compute_digit_record("log2", 400);
                 const auto iv = rec.interval();
                 const auto terms = cf_certified(iv);
                 for (std::size_t j = 0; j < terms.certified_count(); ++j) {
                   const auto [p, q] = reconstruct_exact(terms, j, false);
                   const Rational r(p, q);
                   const bool okj = j % 2 == 0 ? r < iv.lo : r > iv.hi;
                   if (!okj) return fail("j = " + std::to_string(j));
                 }
                 return ok();
               }});
  c.push_back({"cf", "residues_match_exact", false, [] {
                 const auto terms = log2_terms(600);
                 std::vector<std::uint64_t> moduli{6, 149 * 149 * 149, 1'000'000'007ULL, 999'670'036'298'669ULL};
                 std::vector<std::size_t> idx;
                 for (std::size_t j = 0; j <= 500; ++j) idx.push_back(j);
                 const auto table = kernels::omp::residues_at(terms, moduli, idx);
                 for (std::size_t j = 0; j <= 500; j += 7) {
                   const BigInt q = reconstruct_exact(terms, j, false).second;
                   for (std::size_t m = 0; m < moduli.size(); ++m)
                     if (mod_u64(q, moduli[m]) != table[m][j]) return fail("j = " + std::to_string(j));
                 }
                 return ok();
               }});
  c.push_back({"cf", "residue_kernels_serial_equals_omp", false, [] {
                 const auto terms = log2_terms(1000);
                 std::vector<std::uint64_t> moduli;
                 for (std::uint64_t m = 2; m < 2000; m += 37) moduli.push_back(m * m * m * m * m);
                 std::vector<std::size_t> idx{0, 5, 100, 900};
                 return Outcome{kernels::serial::residues_at(terms, moduli, idx) ==
                                    kernels::omp::residues_at(terms, moduli, idx),
                                ""};
               }});
  c.push_back({"cf", "lochs_ratio_2000", false, [] {
                 const auto n = log2_terms(2000).certified_count();
                 const double ratio = static_cast<double>(n) / 2000.0;
                 return Outcome{ratio >= 0.90 && ratio <= 1.0, std::to_string(ratio)};
               }});
  c.push_back({"cf", "lochs_levy_10000", true, [] {
                 const auto terms = log2_terms(10000);
                 const double ratio = static_cast<double>(terms.certified_count()) / 10000.0;
                 const BigInt q = reconstruct_exact(log2_terms(12000), 10000).second;
                 const double slope = static_cast<double>(exact_magnitude(q).log10()) / 10000.0;
                 std::ostringstream d;
                 d << "ratio " << ratio << " slope " << slope;
                 return Outcome{ratio >= 0.90 && ratio <= 1.0 && slope >= 0.50 && slope <= 0.53, d.str()};
               }});

  // arithmetic
  c.push_back({"arithmetic", "staudt_matches_power_sums", false, [] {
                 for (std::uint64_t l = 2; l <= 60; ++l)
                   for (std::uint64_t r = 2; r <= 12; ++r) {
                     const Rational x(power_sum_oracle(l, r), from_u64(l));
                     if (!staudt_fraction(l, r).matches(x)) return fail(std::to_string(l) + "," + std::to_string(r));
                   }
                 return ok();
               }});
  c.push_back({"arithmetic", "p149_in_P1_primitive_root", false, [] {
                 const auto prof = make_profile(1, 149);
                 return Outcome{prof.reason == MembershipReason::primitive_root_3 && prof.required_order == 2, ""};
               }});
  c.push_back({"arithmetic", "base3_wieferich_orders", false, [] {
                 return Outcome{fermat_order(11) == 2 && fermat_order(1006003) == 2 && fermat_order(5) == 1, ""};
               }});
  c.push_back({"arithmetic", "distinct_prime_reciprocals_not_integer", false, [] {
                 for (std::uint64_t l = 2; l <= 1000; ++l) {
                   const auto f = distinct_prime_factors(l);
                   std::uint64_t prod = 1;
                   for (auto p : f) prod *= p;
                   if (prod != l) continue;
                   for (std::uint64_t r = 2; r <= 20; r += 2) {
                     Rational s = 0;
                     bool any = false;
                     for (auto p : f)
                       if (r % (p - 1) == 0) {
                         s += Rational(BigInt(1), from_u64(p));
                         any = true;
                       }
                     s.canonicalize();
                     if (any && s.get_den() == 1) return fail(std::to_string(l));
                   }
                 }
                 return ok();
               }});
  c.push_back({"arithmetic", "N1_is_lcm_1_to_200", false, [] {
                 const auto k = divisibility_constants();
                 for (unsigned long i = 2; i <= 200; ++i)
                   if (mpz_divisible_ui_p(k.N1.get_mpz_t(), i) == 0) return fail(std::to_string(i));
                 return Outcome{valuation(k.N2, 2) == 8 && valuation(k.N2, 3) == 5 && valuation(k.N2, 997) == 1, ""};
               }});

  // scanner
  c.push_back({"scanner", "table_row_N1", false,
               [] { return table_row({1, 642, "764", 2383153, 330, -1, 149, 2000}); }});
  c.push_back({"scanner", "table_row_N2", false,
               [] { return table_row({2, 664, "1529", 2383153, 330, -1, 149, 2000}); }});
  c.push_back({"scanner", "table_row_N32", false,
               [] { return table_row({32, 1294, "175733", 1132014, 638, 1, 5, 2000}); }});
  c.push_back({"scanner", "bound_halves_mantissa", false, [] {
                 TableRow row;
                 row.q_mantissa_micro = 5427815;
                 row.q_exponent = 1667658416;
                 const auto b = bound_from_row(row);
                 return Outcome{b.mantissa_micro == 2713907 && b.exponent == 1667658416, b.str()};
               }});
  c.push_back({"scanner", "prime_bound_monotone", false, [] {
                 ScanConfig small, large;
                 small.digit_budget = large.digit_budget = 1500;
                 small.prime_bound = 100;
                 large.prime_bound = 20000;
                 const auto a = run_scan(small), b = run_scan(large);
                 if (!a.accepted || !b.accepted) return fail("no accepted row");
                 return Outcome{a.accepted->j <= b.accepted->j, std::to_string(a.accepted->j) + " <= " +
                                                                       std::to_string(b.accepted->j)};
               }});
  c.push_back({"scanner", "cache_integrity", false, [] {
                 const auto dir = std::filesystem::temp_directory_path() / "emcf_verify_cache";
                 std::filesystem::remove_all(dir);
                 ArtifactCache cache(dir);
                 cache.digits("log2", 200);
                 const auto path = cache.digit_path("log2", 200);
                 {
                   std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
                   f.seekg(-5, std::ios::end);
                   const char ch = static_cast<char>(f.get());
                   f.seekp(-5, std::ios::end);
                   f.put(ch == '0' ? '1' : '0');
                 }
                 bool caught = false;
                 try {
                   read_digit_file(path);
                 } catch (const CacheIntegrityError&) {
                   caught = true;
                 }
                 std::filesystem::remove_all(dir);
                 return Outcome{caught, "corrupted digit file rejected"};
               }});
  for (ExpectedRow e : {ExpectedRow{64, 8950, "26416", 3458446, 4589, -1, 0, 10000},
                        ExpectedRow{128, 8926, "52834", 3458446, 4589, -1, 0, 10000},
                        ExpectedRow{256, 119476, "122799", 1374540, 61317, 1, 0, 130000},
                        ExpectedRow{768, 119008, "368398", 1374540, 61317, 1, 0, 130000}}) {
    c.push_back({"scanner", "table_row_N" + std::to_string(e.N), true, [e] { return table_row(e); }});
  }
  c.push_back({"scanner", "bound_beyond_10_pow_10000", true, [] {
                 ScanConfig cfg;
                 cfg.N = 256;
                 cfg.digit_budget = 130000;
                 const auto r = run_scan(cfg);
                 if (!r.bound) return fail("no accepted row");
                 return Outcome{r.bound->exponent >= 10000, "m > " + r.bound->str()};
               }});

  // asymptotics
  c.push_back({"asymptotics", "expansion_coefficients", false, [] {
                 const char* printed[] = {"0.69314718", "-1.03972077", "-0.00269758", "0.00323260", "0.00217182"};
                 PrecisionGuard g(40);
                 for (int i = 0; i < 5; ++i)
                   if (abs(expansion_coefficient(i) - Real(std::string(printed[i]))) > Real(5e-9))
                     return fail("coefficient " + std::to_string(i));
                 return ok();
               }});
  c.push_back({"asymptotics", "solve_k_m3_is_1", false, [] {
                 const auto r = solve_k(3, 30);
                 return Outcome{r.exact_integer && r.k == Real(1L), r.k.str(10)};
               }});
  c.push_back({"asymptotics", "root_bracketing_7_to_300", false, [] {
                 for (std::int64_t m = 7; m <= 300; ++m) {
                   const auto r = solve_k(m, 20);
                   const Real M(static_cast<long>(m));
                   if (!(r.k + Real(2L) < M && M < Real(2L) * r.k)) return fail("m = " + std::to_string(m));
                 }
                 return ok();
               }});
  c.push_back({"asymptotics", "expansion_error_decay", false, [] {
                 PrecisionGuard g(60);
                 Real prev;
                 std::ostringstream d;
                 bool good = true;
                 for (std::int64_t m = 100; m <= 3200; m *= 2) {
                   const Real err = abs(solve_k(m, 50).k - expansion_k(m, 3));
                   if (m > 100) {
                     const Real ratio = err / prev;
                     d << ratio.str(4) << " ";
                     good = good && ratio >= Real(1.0 / 32) && ratio <= Real(1.0 / 8);
                   }
                   prev = err;
                 }
                 return Outcome{good, d.str()};
               }});
  c.push_back({"asymptotics", "C_m_in_range_1e9", false, [] {
                 const auto r = solve_k(1'000'000'000, 40);
                 return Outcome{r.C_m > Real(0L) && r.C_m < Real(std::string("0.004")), r.C_m.str(10)};
               }});
  c.push_back({"asymptotics", "convergent_inequality", false, [] {
                 PrecisionGuard g(80);
                 for (std::int64_t m : {100000LL, 1000000LL, 1000000000LL}) {
                   const auto r = solve_k(m, 60);
                   const Real q = Real(static_cast<long>(2 * m - 3));
                   const Real gap = log2_const() - Real(2L) * r.k / q;
                   if (!(gap > Real(0L) && gap < Real(std::string("0.0111")) / (q * q)))
                     return fail("m = " + std::to_string(m));
                 }
                 return ok();
               }});
  c.push_back({"asymptotics", "fm_inequalities", false, [] {
                 PrecisionGuard g(80);
                 std::int64_t m = 100;
                 for (int e = 2; e <= 9; ++e, m *= 10) {
                   const Real M(static_cast<long>(m));
                   const Real m2 = M * M, m3 = m2 * M;
                   const Real f0 = compute_fm(m, 0L);
                   const Real f4 = compute_fm(m, Real(std::string("0.004")));
                   if (!(f0 > Real(std::string("0.005")) / m2 - Real(100L) / m3)) return fail("f_m(0), m = 1e" + std::to_string(e));
                   if (!(f4 < Real(std::string("-0.00015")) / m2 + Real(100L) / m3))
                     return fail("f_m(0.004), m = 1e" + std::to_string(e));
                 }
                 return ok();
               }});
  c.push_back({"asymptotics", "sandwich_grid", false, [] {
                 for (long k : {9L, 50L, 1000L})
                   for (int i = 1; i <= 99; ++i)
                     if (!sandwich_check(Real(k), Real(Rational(i, 100)))) return fail("k=" + std::to_string(k));
                 return ok("297 points");
               }});
  c.push_back({"asymptotics", "g_poly_matches_product", false, [] {
                 for (long k : {2L, 3L, 7L}) {
                   // (1-y)^k e^{ky} truncated at y^12, exactly.
                   std::vector<Rational> lhs(13, Rational(0)), ex(13, Rational(0));
                   Rational term = 1;
                   for (int n = 0; n <= 12; ++n) {
                     ex[n] = term;
                     term = term * k / (n + 1);
                   }
                   for (int a = 0; a <= k; ++a) {
                     BigInt binom;
                     mpz_bin_uiui(binom.get_mpz_t(), k, a);
                     const Rational ca(a % 2 ? -binom : binom);
                     for (int b = 0; a + b <= 12; ++b) lhs[a + b] += ca * ex[b];
                   }
                   for (int n = 0; n <= 12; ++n)
                     if (g_poly(n)(Rational(k)) != lhs[n]) return fail("k=" + std::to_string(k) + " n=" + std::to_string(n));
                 }
                 return ok();
               }});
  c.push_back({"asymptotics", "c_coeffs_duality", false, [] {
                 PrecisionGuard g(40);
                 for (long t = 1; t <= 5; ++t) {
                   const auto a = c_coeffs_at(Real(t));
                   const auto b = c_coeffs_at(Real(-(t + 1)));
                   for (int n = 0; n < 3; ++n) {
                     const Real expected = n % 2 == 0 ? -a[n] : a[n];
                     if (abs(b[n] - expected) > Real(1e-30)) return fail("t=" + std::to_string(t));
                   }
                 }
                 return ok();
               }});
  c.push_back({"asymptotics", "cft_inequality_1_to_100", false, [] {
                 for (std::uint64_t t = 1; t <= 100; ++t) {
                   const Real v = cft_inequality(t);
                   if (!(v > Real(-0.22) && v < Real(0L))) return fail("t=" + std::to_string(t));
                 }
                 return ok();
               }});
  c.push_back({"asymptotics", "delange_residual_m100", false, [] {
                 const auto d = delange_residual(100, solve_k(100, 30).k);
                 return Outcome{abs(d.rho) < d.bound, "rho " + d.rho.str(6) + " bound " + d.bound.str(6)};
               }});
  c.push_back({"asymptotics", "asymp_fit_exact_model", false, [] {
                 PrecisionGuard g(50);
                 std::vector<std::pair<std::int64_t, Real>> s;
                 for (std::int64_t n = 10; n <= 40; ++n) s.emplace_back(n, Real(1L) + Real(1L) / Real(static_cast<long>(n)));
                 const auto fit = asymp_fit(s, 1);
                 return Outcome{abs(fit.coefficients[0] - Real(1L)) < Real(1e-30) &&
                                    abs(fit.coefficients[1] - Real(1L)) < Real(1e-30),
                                ""};
               }});
  c.push_back({"asymptotics", "asymp_fit_recovers_expansion", true, [] {
                 PrecisionGuard g(50);
                 std::vector<RealRoot> roots;
                 for (std::int64_t m = 500; m <= 1500; m += 50) roots.push_back(solve_k(m, 40));
                 const auto fit = asymp_fit(lambda_samples(roots), 1);
                 const bool good = abs(fit.coefficients[0] - Real(std::string("0.69314718"))) < Real(1e-6) &&
                                   abs(fit.coefficients[1] - Real(std::string("-1.03972077"))) < Real(1e-6);
                 return Outcome{good, fit.coefficients[0].str(10) + " " + fit.coefficients[1].str(10)};
               }});
  c.push_back({"asymptotics", "C_m_in_range_1e10", true, [] {
                 const auto r = solve_k(10'000'000'000LL, 40);
                 return Outcome{r.C_m > Real(0L) && r.C_m < Real(std::string("0.004")), r.C_m.str(10)};
               }});

  // omega
  c.push_back({"omega", "sylvester_prefix", false, [] {
                 const long expect[] = {2, 3, 7, 43, 1807};
                 for (int n = 1; n <= 5; ++n)
                   if (*sylvester_log10(n).exact != expect[n - 1]) return fail("n=" + std::to_string(n));
                 for (int n = 1; n <= 12; ++n)
                   if (*sylvester_log10(n).exact != sylvester_product_form(n)) return fail("product form n=" + std::to_string(n));
                 return ok();
               }});
  c.push_back({"omega", "sylvester_log_brackets", false, [] {
                 for (int n = 1; n <= 12; ++n) {
                   const auto s = sylvester_log10(n);
                   PrecisionGuard g(200);
                   const Real l = log10(Real(*s.exact));
                   if (!(s.log10_lo <= l && l <= s.log10_hi)) return fail("n=" + std::to_string(n));
                 }
                 for (int n = 8; n < 200; ++n) {
                   const auto a = sylvester_log10(n), b = sylvester_log10(n + 1);
                   const Real ratio = b.log10_hi / a.log10_lo;
                   if (!(ratio >= Real(1.99) && ratio <= Real(2.01))) return fail("doubling n=" + std::to_string(n));
                   if (b.log10_hi - b.log10_lo > Real(1e-6 * (n + 1))) return fail("width n=" + std::to_string(n + 1));
                 }
                 return ok();
               }});
  c.push_back({"omega", "omega_at_log10m_1667658416", false, [] {
                 const auto b = min_omega_from_bound(Real(std::string("1667658416.4")));
                 return Outcome{b.omega == 33 && min_omega_from_shortcut(Real(std::string("1667658416.4"))) == 33,
                                std::to_string(b.omega)};
               }});
  c.push_back({"omega", "reciprocals_of_58_primes_below_2", false, [] {
                 auto p = primes_up_to(300);
                 p.resize(58);
                 const Rational s = reciprocal_sum_check(p);
                 return Outcome{s > 1 && s < 2 && first_prime_count_with_sum_at_least(Rational(2)) == 59, ""};
               }});
  return c;
}

}  // namespace

std::vector<std::string> verify_suites() { return {"logcomp", "cf", "arithmetic", "scanner", "asymptotics", "omega"}; }

std::vector<CheckResult> run_verify(VerifyLevel level, const std::string& suite,
                                    const std::function<void(const CheckResult&)>& sink) {
  if (suite != "all") {
    const auto names = verify_suites();
    if (std::find(names.begin(), names.end(), suite) == names.end())
      throw std::invalid_argument("unknown verify suite: " + suite);
  }
  std::vector<CheckResult> out;
  for (const auto& check : all_checks()) {
    if (suite != "all" && check.suite != suite) continue;
    if (check.full_only && level != VerifyLevel::full) continue;
    CheckResult r;
    r.suite = check.suite;
    r.name = check.name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const auto o = check.run();
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (sink) sink(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace emcf
