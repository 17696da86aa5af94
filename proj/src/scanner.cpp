#include "emcf/scanner.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "emcf/kernels.hpp"
#include "emcf/real.hpp"

namespace emcf {

namespace {

// nu class of q_j at p from the residue modulo p^(e_p + 1).
OrderViolation classify(const PrimeProfile& prof, std::uint64_t residue, bool& divides) {
  OrderViolation v;
  v.p = prof.p;
  v.required = prof.required_order;
  divides = residue % prof.p == 0;
  if (residue == 0) {
    v.observed = prof.required_order + 1;
    v.at_least = true;
    return v;
  }
  int nu = 0;
  while (residue % prof.p == 0) {
    residue /= prof.p;
    ++nu;
  }
  v.observed = nu;
  return v;
}

std::vector<OrderViolation> violations_from(const std::vector<PrimeProfile>& profiles,
                                            const std::vector<std::uint64_t>& residues) {
  std::vector<OrderViolation> out;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    bool divides = false;
    auto v = classify(profiles[i], residues[i], divides);
    if (divides && (v.at_least || v.observed != v.required)) out.push_back(v);
  }
  return out;
}

bool quotient_at_least(const PartialQuotients& terms, std::size_t i, const BigInt& threshold,
                       std::optional<std::uint64_t> small_threshold) {
  if (small_threshold && terms.is_small(i)) return terms.word(i) >= *small_threshold;
  if (!small_threshold && terms.is_small(i)) return false;
  return terms.at(i) >= threshold;
}

void fill_exact_magnitudes(const PartialQuotients& terms, std::vector<TableRow*>& rows, bool parallel) {
  if (rows.empty()) return;
  kernels::ConvergentMatrix running;
  std::size_t done = 0;  // terms [0, done) folded into `running`
  for (TableRow* row : rows) {
    const std::size_t hi = row->j + 1;
    if (hi > done) {
      auto seg = parallel ? kernels::omp::convergent_product(terms, done, hi)
                          : kernels::serial::convergent_product(terms, done, hi);
      if (done == 0) {
        running = std::move(seg);
      } else {
        kernels::ConvergentMatrix r;
        r.p1 = running.p1 * seg.p1 + running.p0 * seg.q1;
        r.p0 = running.p1 * seg.p0 + running.p0 * seg.q0;
        r.q1 = running.q1 * seg.p1 + running.q0 * seg.q1;
        r.q0 = running.q1 * seg.p0 + running.q0 * seg.q0;
        running = std::move(r);
      }
      done = hi;
    }
    const auto mag = exact_magnitude(running.q1);
    row->q_mantissa_micro = mag.mantissa_micro();
    row->q_exponent = mag.exponent;
    row->exact_magnitude = true;
    const int mod6 = static_cast<int>(mod_u64(running.q1, 6));
    if ((mod6 == 1 ? 1 : -1) != row->q_mod6 || (mod6 != 1 && mod6 != 5))
      throw std::logic_error("streamed residue disagrees with exact reconstruction");
  }
}

}  // namespace

void ScanConfig::validate() const {
  if (N < 1) throw std::invalid_argument("N must be positive");
  if (digit_budget < 1) throw std::invalid_argument("digit budget must be positive");
  if (prime_bound < 5) throw std::invalid_argument("prime bound must be at least 5");
}

ConditionReport check_conditions(const ConvergentState& state, const BigInt& a_next, const ScanConfig& cfg,
                                 const std::vector<PrimeProfile>& profiles) {
  ConditionReport rep;
  rep.j = state.j;
  rep.even_ok = state.j % 2 == 0;
  rep.quotient_ok = a_next >= cfg.threshold();
  const std::uint64_t r6 = state.residue(6);
  rep.coprime6_ok = r6 == 1 || r6 == 5;
  std::vector<std::uint64_t> residues;
  residues.reserve(profiles.size());
  for (const auto& prof : profiles) residues.push_back(state.residue(prof.tracking_modulus));
  rep.order_violations = violations_from(profiles, residues);
  return rep;
}

std::string TableRow::mantissa_string() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld.%06lld", static_cast<long long>(q_mantissa_micro / 1'000'000),
                static_cast<long long>(q_mantissa_micro % 1'000'000));
  return buf;
}

std::string TableRow::format() const {
  std::ostringstream os;
  os << N.get_str() << " | " << j << " | " << a_next.get_str() << " | " << mantissa_string() << " * 10^"
     << q_exponent << " | " << (q_mod6 > 0 ? "+1" : "-1") << " | ";
  if (violating_prime) os << *violating_prime;
  return os.str();
}

std::string MBound::mantissa_string() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld.%06lld", static_cast<long long>(mantissa_micro / 1'000'000),
                static_cast<long long>(mantissa_micro % 1'000'000));
  return buf;
}

std::string MBound::str() const { return mantissa_string() + "e" + std::to_string(exponent); }

MBound bound_from_row(const TableRow& row) {
  if (row.q_mantissa_micro < 1'000'000 || row.q_mantissa_micro > 9'999'999)
    throw std::invalid_argument("row mantissa out of range");
  MBound b;
  if (row.q_mantissa_micro >= 2'000'000) {
    b.mantissa_micro = row.q_mantissa_micro / 2;
    b.exponent = row.q_exponent;
  } else {
    b.mantissa_micro = row.q_mantissa_micro * 5;
    b.exponent = row.q_exponent - 1;
  }
  PrecisionGuard guard(40);
  Real l = log10(Real(static_cast<long>(b.mantissa_micro))) - Real(6L) + Real(static_cast<long>(b.exponent));
  b.log10 = l.fixed_floor(9);
  return b;
}

std::string to_string(ScanStatus status) {
  return status == ScanStatus::accepted ? "accepted" : "budget_exhausted";
}

PartialQuotients scan_terms_from_digits(const DigitRecord& log2_digits, const BigInt& N, CfMethod method,
                                        bool parallel) {
  const auto iv = scale_interval(log2_digits.interval(), 2 * N);
  return cf_certified(iv, SIZE_MAX, CertifyOptions{method, parallel});
}

ScanResult scan_terms(const PartialQuotients& terms, const ScanConfig& cfg) {
  cfg.validate();
  ScanResult result;
  result.certified_terms = terms.certified_count();
  const std::size_t len = terms.certified_count();
  if (len < 2) return result;

  const BigInt threshold = cfg.threshold();
  std::optional<std::uint64_t> small_threshold;
  if (fits_u64(threshold)) small_threshold = to_u64(threshold);

  // Pass 1: conditions (a)-(c) need only q_j mod 6.
  ConvergentStream stream(terms, {6});
  do {
    const std::size_t j = stream.index();
    if (j + 1 >= len) break;
    if (j % 2 != 0) continue;
    const std::uint64_t r6 = stream.residue_at(0);
    if (r6 != 1 && r6 != 5) continue;
    if (!quotient_at_least(terms, j + 1, threshold, small_threshold)) continue;
    TableRow row;
    row.N = cfg.N;
    row.j = j;
    row.a_next = terms.at(j + 1);
    const auto mag = stream.magnitude();
    row.q_mantissa_micro = mag.mantissa_micro();
    row.q_exponent = mag.exponent;
    row.q_mod6 = r6 == 1 ? 1 : -1;
    result.candidates.push_back(std::move(row));
  } while (stream.advance());

  // Pass 2: condition (d) on tracked primes, in index-doubling batches so the
  // residue walk stops soon after the first accepted candidate.
  const auto profiles = prime_set(cfg.N, cfg.prime_bound, cfg.parallel);
  result.tracked_primes = profiles.size();
  std::vector<std::uint64_t> moduli;
  moduli.reserve(profiles.size());
  for (const auto& p : profiles) moduli.push_back(p.tracking_modulus);

  std::size_t next = 0;
  std::size_t limit = result.candidates.empty() ? 0 : std::max<std::size_t>(result.candidates.front().j, 1024);
  std::optional<std::size_t> accepted_index;
  while (next < result.candidates.size() && !accepted_index) {
    std::size_t end = next;
    while (end < result.candidates.size() && result.candidates[end].j <= limit) ++end;
    if (end == next) end = next + 1;
    std::vector<std::size_t> indices;
    for (std::size_t i = next; i < end; ++i) indices.push_back(result.candidates[i].j);
    const auto table = cfg.parallel ? kernels::omp::residues_at(terms, moduli, indices)
                                    : kernels::serial::residues_at(terms, moduli, indices);
    for (std::size_t c = next; c < end; ++c) {
      std::vector<std::uint64_t> residues(moduli.size());
      for (std::size_t m = 0; m < moduli.size(); ++m) residues[m] = table[m][c - next];
      const auto violations = violations_from(profiles, residues);
      auto& row = result.candidates[c];
      row.order_checked = true;
      if (!violations.empty()) {
        row.violating_prime = violations.front().p;
      } else {
        accepted_index = c;
        break;
      }
    }
    next = end;
    limit *= 2;
  }

  std::vector<TableRow*> exact_rows;
  for (auto& row : result.candidates)
    if (row.order_checked && row.j <= cfg.exact_magnitude_limit) exact_rows.push_back(&row);
  fill_exact_magnitudes(terms, exact_rows, cfg.parallel);

  if (accepted_index) {
    result.status = ScanStatus::accepted;
    result.accepted = result.candidates[*accepted_index];
    result.bound = bound_from_row(*result.accepted);
  }
  return result;
}

ScanResult run_scan(const ScanConfig& cfg) {
  cfg.validate();
  if (cfg.digit_budget > cfg.log_options.max_digits) {
    ScanResult empty;
    empty.note = "digit budget " + std::to_string(cfg.digit_budget) + " exceeds the ceiling of " +
                 std::to_string(cfg.log_options.max_digits) + " digits";
    return empty;
  }
  const auto digits = compute_digit_record("log2", cfg.digit_budget, cfg.log_options);
  PartialQuotients terms;
  try {
    terms = scan_terms_from_digits(digits, cfg.N, cfg.method, cfg.parallel);
  } catch (const CertificationError&) {
    ScanResult empty;
    empty.note = "no certified terms at this digit budget";
    return empty;
  }
  return scan_terms(terms, cfg);
}

}  // namespace emcf
