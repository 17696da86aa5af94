#include <stdexcept>

#include "emcf/kernels.hpp"
#include "emcf/parallel.hpp"

namespace emcf::kernels {

namespace {

constexpr std::uint64_t kTaskCutoff = 2048;

AtanhSplit leaf(std::uint64_t x, std::uint64_t k) {
  AtanhSplit s;
  s.T = 1;
  s.B = from_u64(2 * k + 1);
  if (k == 0) {
    s.Q = 1;
  } else {
    s.Q = from_u64(x);
    s.Q *= s.Q;
  }
  return s;
}

// T = B_r Q_r T_l + B_l T_r, B = B_l B_r, Q = Q_l Q_r
AtanhSplit combine(AtanhSplit&& left, AtanhSplit&& right) {
  AtanhSplit out;
  out.T = right.B * right.Q * left.T + left.B * right.T;
  out.B = left.B * right.B;
  out.Q = left.Q * right.Q;
  return out;
}

AtanhSplit split_serial(std::uint64_t x, std::uint64_t lo, std::uint64_t hi) {
  if (hi - lo == 1) return leaf(x, lo);
  const std::uint64_t mid = lo + (hi - lo) / 2;
  return combine(split_serial(x, lo, mid), split_serial(x, mid, hi));
}

AtanhSplit split_tasks(std::uint64_t x, std::uint64_t lo, std::uint64_t hi) {
  if (hi - lo <= kTaskCutoff) return split_serial(x, lo, hi);
  const std::uint64_t mid = lo + (hi - lo) / 2;
  AtanhSplit left;
  AtanhSplit right;
#pragma omp task shared(left) firstprivate(x, lo, mid)
  left = split_tasks(x, lo, mid);
  right = split_tasks(x, mid, hi);
#pragma omp taskwait
  return combine(std::move(left), std::move(right));
}

void check_range(std::uint64_t x, std::uint64_t lo, std::uint64_t hi) {
  if (x < 2) throw std::invalid_argument("atanh_split requires x >= 2");
  if (hi <= lo) throw std::invalid_argument("atanh_split requires a non-empty term range");
}

}  // namespace

AtanhSplit serial::atanh_split(std::uint64_t x, std::uint64_t lo, std::uint64_t hi) {
  check_range(x, lo, hi);
  return split_serial(x, lo, hi);
}

AtanhSplit omp::atanh_split(std::uint64_t x, std::uint64_t lo, std::uint64_t hi) {
  check_range(x, lo, hi);
  if (in_parallel()) return split_tasks(x, lo, hi);
  AtanhSplit result;
#pragma omp parallel
#pragma omp single
  result = split_tasks(x, lo, hi);
  return result;
}

}  // namespace emcf::kernels
