#include <algorithm>
#include <array>
#include <stdexcept>

#include "emcf/kernels.hpp"
#include "emcf/parallel.hpp"

namespace emcf::kernels {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;

constexpr u64 kNarrowLimit = u64{1} << 32;
constexpr u64 kDoubleLimit = u64{1} << 50;
constexpr u64 kLongDoubleLimit = u64{1} << 61;
constexpr std::size_t kBlock = 8;

// a * q + q' mod m for m < 2^32; the sum fits in 64 bits.
struct NarrowStep {
  u64 m;
  explicit NarrowStep(u64 modulus) : m(modulus) {}
  u64 operator()(u64 a, u64 q, u64 q_prev) const { return (a * q + q_prev) % m; }
};

// Floating quotient estimate, off by at most two; the wrapped 64-bit
// difference a*q - est*m then equals the residue up to a few multiples of m.
template <typename F>
struct EstimateStep {
  u64 m;
  F inv;
  explicit EstimateStep(u64 modulus) : m(modulus), inv(F(1) / static_cast<F>(modulus)) {}
  u64 operator()(u64 a, u64 q, u64 q_prev) const {
    const auto est = static_cast<u64>(static_cast<F>(a) * static_cast<F>(q) * inv);
    auto r = static_cast<i64>(a * q - est * m);
    while (r < 0) r += static_cast<i64>(m);
    while (r >= static_cast<i64>(m)) r -= static_cast<i64>(m);
    u64 s = static_cast<u64>(r) + q_prev;
    if (s >= m) s -= m;
    return s;
  }
};

struct ExactStep {
  u64 m;
  explicit ExactStep(u64 modulus) : m(modulus) {}
  u64 operator()(u64 a, u64 q, u64 q_prev) const {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * q + q_prev) % m);
  }
};

enum class StepKind { narrow, dbl, ldbl, exact };

StepKind kind_of(u64 m) {
  if (m < kNarrowLimit) return StepKind::narrow;
  if (m < kDoubleLimit) return StepKind::dbl;
  if (m < kLongDoubleLimit) return StepKind::ldbl;
  return StepKind::exact;
}

// Walks q_j mod each of up to kBlock moduli at once; the independent chains
// hide the latency of one modular step.
template <typename Step>
void walk_block(const PartialQuotients& terms, std::span<const u64> moduli, std::span<const std::size_t> indices,
                std::span<std::vector<u64>*> out) {
  const std::size_t n = moduli.size();
  std::array<Step, kBlock> steps{Step(2), Step(2), Step(2), Step(2), Step(2), Step(2), Step(2), Step(2)};
  std::array<u64, kBlock> cur{}, prev{};
  u64 min_m = UINT64_MAX;
  for (std::size_t k = 0; k < n; ++k) {
    steps[k] = Step(moduli[k]);
    cur[k] = 1 % moduli[k];
    min_m = std::min(min_m, moduli[k]);
    out[k]->clear();
    out[k]->reserve(indices.size());
  }
  if (indices.empty()) return;
  const std::size_t last = indices.back();
  std::size_t next = 0;
  for (std::size_t j = 0;; ++j) {
    while (next < indices.size() && indices[next] == j) {
      for (std::size_t k = 0; k < n; ++k) out[k]->push_back(cur[k]);
      ++next;
    }
    if (j == last) break;
    const u64 w = terms.word(j + 1);
    if (w < min_m) {
      for (std::size_t k = 0; k < n; ++k) {
        const u64 nxt = steps[k](w, cur[k], prev[k]);
        prev[k] = cur[k];
        cur[k] = nxt;
      }
    } else {
      for (std::size_t k = 0; k < n; ++k) {
        const u64 nxt = steps[k](terms.mod(j + 1, moduli[k]), cur[k], prev[k]);
        prev[k] = cur[k];
        cur[k] = nxt;
      }
    }
  }
}

void dispatch(StepKind kind, const PartialQuotients& terms, std::span<const u64> moduli,
              std::span<const std::size_t> indices, std::span<std::vector<u64>*> out) {
  switch (kind) {
    case StepKind::narrow: return walk_block<NarrowStep>(terms, moduli, indices, out);
    case StepKind::dbl: return walk_block<EstimateStep<double>>(terms, moduli, indices, out);
    case StepKind::ldbl: return walk_block<EstimateStep<long double>>(terms, moduli, indices, out);
    case StepKind::exact: return walk_block<ExactStep>(terms, moduli, indices, out);
  }
}

void check(const PartialQuotients& terms, std::span<const u64> moduli, std::span<const std::size_t> indices) {
  if (!std::is_sorted(indices.begin(), indices.end()))
    throw std::invalid_argument("residue indices must be sorted");
  if (!indices.empty() && indices.back() >= terms.size())
    throw std::out_of_range("residue index beyond term list");
  for (auto m : moduli)
    if (m < 2) throw std::invalid_argument("modulus must be at least 2");
}

struct Block {
  StepKind kind;
  std::vector<u64> moduli;
  std::vector<std::size_t> slots;
};

// Groups moduli by step kind, kBlock at a time.
std::vector<Block> plan(std::span<const u64> moduli) {
  std::vector<Block> blocks;
  for (StepKind kind : {StepKind::narrow, StepKind::dbl, StepKind::ldbl, StepKind::exact}) {
    Block b{kind, {}, {}};
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      if (kind_of(moduli[i]) != kind) continue;
      b.moduli.push_back(moduli[i]);
      b.slots.push_back(i);
      if (b.moduli.size() == kBlock) {
        blocks.push_back(std::move(b));
        b = Block{kind, {}, {}};
      }
    }
    if (!b.moduli.empty()) blocks.push_back(std::move(b));
  }
  return blocks;
}

void run_block(const Block& b, const PartialQuotients& terms, std::span<const std::size_t> indices,
               ResidueTable& table) {
  std::array<std::vector<u64>*, kBlock> out{};
  for (std::size_t k = 0; k < b.slots.size(); ++k) out[k] = &table[b.slots[k]];
  dispatch(b.kind, terms, b.moduli, indices, std::span(out.data(), b.slots.size()));
}

}  // namespace

std::vector<u64> residues_for_modulus(const PartialQuotients& terms, u64 modulus,
                                      std::span<const std::size_t> indices) {
  check(terms, std::span(&modulus, 1), indices);
  std::vector<u64> result;
  std::vector<u64>* out = &result;
  dispatch(kind_of(modulus), terms, std::span(&modulus, 1), indices, std::span(&out, 1));
  return result;
}

ResidueTable serial::residues_at(const PartialQuotients& terms, std::span<const u64> moduli,
                                 std::span<const std::size_t> indices) {
  check(terms, moduli, indices);
  ResidueTable table(moduli.size());
  for (const auto& b : plan(moduli)) run_block(b, terms, indices, table);
  return table;
}

ResidueTable omp::residues_at(const PartialQuotients& terms, std::span<const u64> moduli,
                              std::span<const std::size_t> indices) {
  check(terms, moduli, indices);
  ResidueTable table(moduli.size());
  const auto blocks = plan(moduli);
  const auto count = static_cast<long>(blocks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) run_block(blocks[i], terms, indices, table);
  return table;
}

}  // namespace emcf::kernels
