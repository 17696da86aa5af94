#pragma once

// Real-k analysis of 1^k + ... + (m-1)^k = t m^k: the root k(m), its
// inverse-power expansion, the bracketing function f_m(C) and the
// inequalities used to pin C_m, plus an extrapolation fitter.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "emcf/bigint.hpp"
#include "emcf/real.hpp"

namespace emcf {

/// Root bracketing failed even after widening the seed interval.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// sum_{j=1}^{m-1} (1 - j/m)^k, truncated once terms drop below
/// 10^-(precision+10). Works at precision + 20 digits.
Real sum_powers_ratio(std::int64_t m, const Real& k, int precision);

struct RealRoot {
  std::int64_t m = 0;
  Real k;
  Real residual;  // |sum - t|
  Real C_m;       // from k/m = log 2 (1 - 3/(2m) - C_m/m^2); t = 1 only
  bool exact_integer = false;
};

/// Unique k > 0 with sum_powers_ratio(m, k) = t, by bracketed regula falsi to
/// residual < 10^-precision. For t = 1 an integer root is confirmed exactly
/// when m <= 1000.
RealRoot solve_k(std::int64_t m, int precision = 40, std::uint64_t t = 1);

/// cm - 3c/2 - (25c/12 - 3c^2)/m + ... with c = log 2, including every term
/// up to and including m^-order; order is 0..3.
Real expansion_k(std::int64_t m, int order);

/// Numeric coefficient of m^(1-i) in expansion_k, i = 0..4.
Real expansion_coefficient(int i);

/// f_m(C) at lambda = log 2 (1 - 3/(2m) - C/m^2), z = e^lambda.
Real compute_fm(std::int64_t m, const Real& C);

/// Two-sided bound on (1-y)^k for k > 8, 0 < y < 1, checked with 20 guard digits.
bool sandwich_check(const Real& k, const Real& y, int precision = 40);

/// Taylor coefficient g_n(k) of (1-y)^k e^{ky} as an exact polynomial in k.
struct SeriesPolynomial {
  int n = 0;
  std::vector<Rational> coefficients;  // coefficient of k^i at index i

  int degree() const;
  Rational operator()(const Rational& k) const;
  Real operator()(const Real& k) const;
  std::string str() const;
};

SeriesPolynomial g_poly(int n);

/// lambda = c0 + c1/m + c2/m^2 + ... for the equation with right side t m^k.
struct GeneralizedCoeffs {
  std::uint64_t t = 1;
  std::uint64_t t1 = 3;  // 2t + 1
  Real c0, c1, c2;
};

GeneralizedCoeffs c_coeffs(std::uint64_t t, int precision = 40);

/// c0, c1, c2 evaluated as functions of a real parameter; used for the
/// t -> -(t+1) duality, where the integer-t entry point does not apply.
std::vector<Real> c_coeffs_at(const Real& t);

/// t1^3 c^2 - 2 t1^2 c - t1 c^2 + 4c/3 with t1 = 2t+1, c = log(1 + 1/t).
Real cft_inequality(std::uint64_t t, int precision = 40);

struct DelangeResidual {
  Real rho;
  Real bound;  // +inf when k <= 1
  Real lhs;    // sum_{j<m} j^k / (m-1)^k
};

/// rho_k(m) from the power sum, with C = (k+1)/(m-1); m <= 10^4.
DelangeResidual delange_residual(std::int64_t m, const Real& k, int precision = 40);

struct FitResult {
  std::vector<Real> coefficients;  // c_0 .. c_depth
  std::vector<Real> check;         // same from the upper-half window
  bool stable = true;              // windows agree within tolerance
  std::string warning;
};

/// Fits s_n ~ c_0 + c_1/n + c_2/n^2 + ... on two windows of the samples using
/// a few extra terms beyond `depth`, and reports the wide-window estimate.
FitResult asymp_fit(const std::vector<std::pair<std::int64_t, Real>>& samples, int depth,
                    const Real& tolerance = Real(1e-6));

/// (m, k) samples mapped to (m, k/m), the sequence whose expansion starts at log 2.
std::vector<std::pair<std::int64_t, Real>> lambda_samples(const std::vector<RealRoot>& roots);

}  // namespace emcf
