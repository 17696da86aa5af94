#include <stdexcept>

#include "emcf/kernels.hpp"
#include "emcf/parallel.hpp"

namespace emcf::kernels {

namespace {

constexpr std::size_t kTaskCutoff = 4096;

ConvergentMatrix leaf(const PartialQuotients& terms, std::size_t i) {
  ConvergentMatrix m;
  m.p1 = terms.at(i);
  m.p0 = 1;
  m.q1 = 1;
  m.q0 = 0;
  return m;
}

ConvergentMatrix multiply(const ConvergentMatrix& a, const ConvergentMatrix& b) {
  ConvergentMatrix r;
  r.p1 = a.p1 * b.p1 + a.p0 * b.q1;
  r.p0 = a.p1 * b.p0 + a.p0 * b.q0;
  r.q1 = a.q1 * b.p1 + a.q0 * b.q1;
  r.q0 = a.q1 * b.p0 + a.q0 * b.q0;
  return r;
}

ConvergentMatrix product_serial(const PartialQuotients& terms, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return leaf(terms, lo);
  const std::size_t mid = lo + (hi - lo) / 2;
  return multiply(product_serial(terms, lo, mid), product_serial(terms, mid, hi));
}

ConvergentMatrix product_tasks(const PartialQuotients& terms, std::size_t lo, std::size_t hi) {
  if (hi - lo <= kTaskCutoff) return product_serial(terms, lo, hi);
  const std::size_t mid = lo + (hi - lo) / 2;
  ConvergentMatrix left;
  ConvergentMatrix right;
#pragma omp task shared(left, terms) firstprivate(lo, mid)
  left = product_tasks(terms, lo, mid);
  right = product_tasks(terms, mid, hi);
#pragma omp taskwait
  return multiply(left, right);
}

void check_range(const PartialQuotients& terms, std::size_t lo, std::size_t hi) {
  if (hi <= lo || hi > terms.size()) throw std::out_of_range("convergent_product range");
}

}  // namespace

ConvergentMatrix serial::convergent_product(const PartialQuotients& terms, std::size_t lo, std::size_t hi) {
  check_range(terms, lo, hi);
  return product_serial(terms, lo, hi);
}

ConvergentMatrix omp::convergent_product(const PartialQuotients& terms, std::size_t lo, std::size_t hi) {
  check_range(terms, lo, hi);
  if (in_parallel()) return product_tasks(terms, lo, hi);
  ConvergentMatrix result;
#pragma omp parallel
#pragma omp single
  result = product_tasks(terms, lo, hi);
  return result;
}

}  // namespace emcf::kernels
