#include <benchmark/benchmark.h>

#include "emcf/arithmetic.hpp"
#include "emcf/cf.hpp"
#include "emcf/kernels.hpp"
#include "emcf/logcomp.hpp"

using namespace emcf;

namespace {

const PartialQuotients& log2_terms() {
  static const PartialQuotients terms = cf_certified(compute_log2(20000));
  return terms;
}

const std::vector<std::uint64_t>& moduli() {
  static const std::vector<std::uint64_t> m = [] {
    std::vector<std::uint64_t> out{6};
    for (const auto& p : prime_set(1, 20000)) out.push_back(p.tracking_modulus);
    return out;
  }();
  return m;
}

template <auto Fn>
void atanh_split(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(3, 0, n));
}

template <auto Fn>
void convergent_product(benchmark::State& state) {
  const auto& terms = log2_terms();
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(state.range(0)), terms.certified_count());
  for (auto _ : state) benchmark::DoNotOptimize(Fn(terms, 0, n));
}

template <auto Fn>
void residues_at(benchmark::State& state) {
  const auto& terms = log2_terms();
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < terms.certified_count(); j += 97) idx.push_back(j);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(terms, moduli(), idx));
}

}  // namespace

BENCHMARK(atanh_split<kernels::serial::atanh_split>)->Name("atanh_split/serial")->Arg(20000)->Arg(200000);
BENCHMARK(atanh_split<kernels::omp::atanh_split>)->Name("atanh_split/omp")->Arg(20000)->Arg(200000);
BENCHMARK(convergent_product<kernels::serial::convergent_product>)->Name("convergent_product/serial")->Arg(19000);
BENCHMARK(convergent_product<kernels::omp::convergent_product>)->Name("convergent_product/omp")->Arg(19000);
BENCHMARK(residues_at<kernels::serial::residues_at>)->Name("residues_at/serial");
BENCHMARK(residues_at<kernels::omp::residues_at>)->Name("residues_at/omp");

BENCHMARK_MAIN();
