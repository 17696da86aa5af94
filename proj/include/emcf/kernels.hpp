#pragma once

// Data-parallel kernels. Every kernel has an OpenMP implementation in
// `emcf::kernels::omp` and a straightforward serial reference in
// `emcf::kernels::serial`; the two must agree bit for bit.

#include <cstdint>
#include <span>
#include <vector>

#include "emcf/bigint.hpp"
#include "emcf/quotients.hpp"

namespace emcf::kernels {

/// Binary-splitting state for sum_{k=lo}^{hi-1} 1 / ((2k+1) x^(2k)).
/// For lo = 0 the partial sum equals T / (B * Q); a segment with lo > 0
/// holds the partial sum times x^(2 lo - 2).
struct AtanhSplit {
  BigInt T;
  BigInt B;
  BigInt Q;
};

/// 2x2 matrix of convergent numerators/denominators:
/// [[p_j, p_{j-1}], [q_j, q_{j-1}]] = prod_i [[a_i, 1], [1, 0]].
struct ConvergentMatrix {
  BigInt p1, p0;
  BigInt q1, q0;
};

/// Residues of q_j modulo one modulus at a sorted list of indices j.
using ResidueTable = std::vector<std::vector<std::uint64_t>>;

namespace serial {
AtanhSplit atanh_split(std::uint64_t x, std::uint64_t lo, std::uint64_t hi);
ConvergentMatrix convergent_product(const PartialQuotients& terms, std::size_t lo, std::size_t hi);
ResidueTable residues_at(const PartialQuotients& terms, std::span<const std::uint64_t> moduli,
                         std::span<const std::size_t> indices);
}  // namespace serial

namespace omp {
AtanhSplit atanh_split(std::uint64_t x, std::uint64_t lo, std::uint64_t hi);
ConvergentMatrix convergent_product(const PartialQuotients& terms, std::size_t lo, std::size_t hi);
ResidueTable residues_at(const PartialQuotients& terms, std::span<const std::uint64_t> moduli,
                         std::span<const std::size_t> indices);
}  // namespace omp

/// Residues of q_j mod m for one modulus, walking the recurrence
/// q_{i+1} = a_{i+1} q_i + q_{i-1} from q_{-1} = 0, q_0 = 1.
std::vector<std::uint64_t> residues_for_modulus(const PartialQuotients& terms, std::uint64_t modulus,
                                                std::span<const std::size_t> indices);

}  // namespace emcf::kernels
