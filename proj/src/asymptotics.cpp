#include "emcf/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace emcf {

namespace {

constexpr int kGuardDigits = 20;

Real pow10_neg(int digits) { return pow(Real(10L), static_cast<long>(-digits)); }

Real rat(long p, long q) { return Real(Rational(p, q)); }

// f(k) = sum - t is strictly decreasing in k.
Real objective(std::int64_t m, const Real& k, int precision, std::uint64_t t) {
  return sum_powers_ratio(m, k, precision) - Real(static_cast<long>(t));
}

Real seed(std::int64_t m, std::uint64_t t) {
  if (t == 1) return expansion_k(m, 3);
  const auto c = c_coeffs(t, 20);
  const Real M(static_cast<long>(m));
  return M * c.c0 + c.c1 + c.c2 / M;
}

bool confirm_integer_root(std::int64_t m, long k) {
  BigInt lhs = 0;
  for (std::int64_t j = 1; j < m; ++j) lhs += pow_ui(BigInt(static_cast<long>(j)), static_cast<unsigned long>(k));
  return lhs == pow_ui(BigInt(static_cast<long>(m)), static_cast<unsigned long>(k));
}

std::vector<Real> solve_linear(std::vector<std::vector<Real>> a, std::vector<Real> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
    if (a[piv][col].sign() == 0) throw std::domain_error("singular fit system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Real f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Real> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Real s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

std::vector<Real> fit_window(const std::vector<std::pair<std::int64_t, Real>>& samples,
                             const std::vector<std::size_t>& idx) {
  const std::size_t K = idx.size();
  std::vector<std::vector<Real>> a(K, std::vector<Real>(K));
  std::vector<Real> b(K);
  for (std::size_t r = 0; r < K; ++r) {
    const Real inv = Real(1L) / Real(static_cast<long>(samples[idx[r]].first));
    Real p = 1L;
    for (std::size_t c = 0; c < K; ++c) {
      a[r][c] = p;
      p *= inv;
    }
    b[r] = samples[idx[r]].second;
  }
  return solve_linear(std::move(a), std::move(b));
}

// K indices spread evenly over [first, last].
std::vector<std::size_t> spread(std::size_t first, std::size_t last, std::size_t K) {
  std::vector<std::size_t> idx;
  if (K == 1) return {last};
  for (std::size_t i = 0; i < K; ++i) idx.push_back(first + (i * (last - first) + (K - 1) / 2) / (K - 1));
  return idx;
}

}  // namespace

Real sum_powers_ratio(std::int64_t m, const Real& k, int precision) {
  if (m < 2) throw std::invalid_argument("sum_powers_ratio requires m >= 2");
  if (k.sign() <= 0) throw std::invalid_argument("sum_powers_ratio requires k > 0");
  PrecisionGuard guard(precision + kGuardDigits);
  const Real M(static_cast<long>(m));
  const Real kk(k);
  const Real eps = pow10_neg(precision + 10);
  // (1 - j/m)^k < r^j with r = e^{-k/m}; tail after j is r^{j+1} / (1 - r).
  const Real r = exp(-(kk / M));
  const Real one_minus_r = Real(1L) - r;
  Real rj = r;
  Real sum = 0L;
  for (std::int64_t j = 1; j < m; ++j) {
    sum += exp(kk * log1p(-(Real(static_cast<long>(j)) / M)));
    rj *= r;
    if (rj / one_minus_r < eps) break;
  }
  return sum;
}

RealRoot solve_k(std::int64_t m, int precision, std::uint64_t t) {
  if (m < 3) throw std::invalid_argument("solve_k requires m >= 3");
  if (t < 1) throw std::invalid_argument("solve_k requires t >= 1");
  PrecisionGuard guard(precision + kGuardDigits);
  const Real M(static_cast<long>(m));
  const Real center = seed(m, t);
  Real delta = Real(1e3) / (M * M);
  if (delta < Real(1e-2)) delta = Real(1e-2);
  const Real tiny = pow10_neg(precision);

  Real lo, hi, flo, fhi;
  bool bracketed = false;
  for (int attempt = 0; attempt < 2 && !bracketed; ++attempt) {
    lo = center - delta;
    if (lo <= tiny) lo = tiny;
    hi = center + delta;
    flo = objective(m, lo, precision, t);
    fhi = objective(m, hi, precision, t);
    bracketed = flo.sign() > 0 && fhi.sign() < 0;
    delta *= Real(100L);
  }
  if (!bracketed) throw BracketError("solve_k: seed interval does not bracket the root for m = " + std::to_string(m));

  // Illinois-modified regula falsi: keeps a sign-changing bracket at every
  // step, falls back to bisection when the secant point stalls.
  const Real target = pow10_neg(precision);
  Real x = (lo + hi) / Real(2L);
  Real fx = objective(m, x, precision, t);
  int side = 0;
  for (int iter = 0; iter < 4000 && abs(fx) >= target; ++iter) {
    Real cand = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(cand > lo && cand < hi) || iter % 8 == 7) cand = (lo + hi) / Real(2L);
    x = cand;
    fx = objective(m, x, precision, t);
    if (fx.sign() == 0) break;
    if (fx.sign() > 0) {
      lo = x;
      flo = fx;
      if (side == 1) fhi /= Real(2L);
      side = 1;
    } else {
      hi = x;
      fhi = fx;
      if (side == -1) flo /= Real(2L);
      side = -1;
    }
    if (hi - lo <= abs(x) * pow10_neg(precision + kGuardDigits - 2)) break;
  }

  RealRoot root;
  root.m = m;
  root.k = x;
  root.residual = abs(fx);
  if (t == 1 && m <= 1000) {
    const Real kr = floor(x + Real(0.5));
    const long ki = mpfr_get_si(kr.get(), MPFR_RNDN);
    if (ki >= 1 && abs(x - kr) < Real(1e-6) && confirm_integer_root(m, ki)) {
      root.k = kr;
      root.residual = 0L;
      root.exact_integer = true;
    }
  }
  if (t == 1) root.C_m = M * M - Real(1.5) * M - root.k * M / log2_const();
  return root;
}

Real expansion_coefficient(int i) {
  const Real c = log2_const();
  const Real c2 = c * c, c3 = c2 * c, c4 = c3 * c;
  switch (i) {
    case 0: return c;
    case 1: return -(rat(3, 2) * c);
    case 2: return -(rat(25, 12) * c - Real(3L) * c2);
    case 3: return -(rat(73, 8) * c) + rat(61, 2) * c2 - Real(25L) * c3;
    case 4: return -(rat(41299, 720) * c) + rat(657, 2) * c2 - Real(598L) * c3 + rat(1405, 4) * c4;
    default: throw std::invalid_argument("expansion coefficient index must be 0..4");
  }
}

Real expansion_k(std::int64_t m, int order) {
  if (m < 2) throw std::invalid_argument("expansion_k requires m >= 2");
  if (order < 0 || order > 3) throw std::invalid_argument("expansion order must be 0..3");
  const Real M(static_cast<long>(m));
  Real power = M;
  Real sum = 0L;
  for (int i = 0; i <= order + 1; ++i) {
    sum += expansion_coefficient(i) * power;
    power /= M;
  }
  return sum;
}

Real compute_fm(std::int64_t m, const Real& C) {
  if (m < 100) throw std::invalid_argument("compute_fm requires m >= 100");
  const Real M(static_cast<long>(m));
  const Real M2 = M * M;
  const Real lambda = log2_const() * (Real(1L) - Real(3L) / (Real(2L) * M) - C / M2);
  const Real z = exp(lambda);
  const Real z2 = z * z, z3 = z2 * z, z4 = z3 * z;
  const Real d = z - Real(1L);
  const Real d3 = d * d * d, d4 = d3 * d, d5 = d4 * d;
  Real f = Real(1L) - Real(1L) / d;
  f += lambda / (Real(2L) * M) * (z + z2) / d3;
  f += lambda / (Real(3L) * M2) * (z + Real(4L) * z2 + z3) / d4;
  f -= lambda * (lambda - Real(2L) / M) / (Real(8L) * M2) * (z + Real(11L) * z2 + Real(11L) * z3 + z4) / d5;
  return f;
}

bool sandwich_check(const Real& k, const Real& y, int precision) {
  if (!(k > Real(8L))) throw std::domain_error("sandwich_check requires k > 8");
  if (!(y > Real(0L) && y < Real(1L))) throw std::domain_error("sandwich_check requires 0 < y < 1");
  PrecisionGuard guard(precision + kGuardDigits);
  const Real K(k), Y(y);
  const Real y2 = Y * Y, y3 = y2 * Y, y4 = y3 * Y, y5 = y4 * Y, y6 = y5 * Y;
  const Real mid = pow(Real(1L) - Y, K);
  const Real e = exp(-(K * Y));
  const Real common = Real(1L) - K / Real(2L) * y2 - K / Real(3L) * y3 + K * (K - Real(2L)) / Real(8L) * y4;
  const Real lower = e * (common + K * (Real(5L) * K - Real(6L)) / Real(30L) * y5 - K * K * K / Real(6L) * y6);
  const Real upper = e * (common + K * K / Real(2L) * y5);
  return lower < mid && mid < upper;
}

int SeriesPolynomial::degree() const {
  for (std::size_t i = coefficients.size(); i-- > 0;)
    if (coefficients[i] != 0) return static_cast<int>(i);
  return -1;
}

Rational SeriesPolynomial::operator()(const Rational& k) const {
  Rational acc = 0;
  for (std::size_t i = coefficients.size(); i-- > 0;) acc = acc * k + coefficients[i];
  return acc;
}

Real SeriesPolynomial::operator()(const Real& k) const {
  Real acc = 0L;
  for (std::size_t i = coefficients.size(); i-- > 0;) acc = acc * k + Real(coefficients[i]);
  return acc;
}

std::string SeriesPolynomial::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i] == 0) continue;
    if (!first) os << " + ";
    os << "(" << coefficients[i].get_str() << ")";
    if (i > 0) os << "*k^" << i;
    first = false;
  }
  return first ? "0" : os.str();
}

SeriesPolynomial g_poly(int n) {
  if (n < 0 || n > 64) throw std::invalid_argument("g_poly requires 0 <= n <= 64");
  // (1-y)e^y = exp(-sum_{i>=2} y^i / i), so n g_n = -k sum_{i=2}^{n} g_{n-i}.
  std::vector<std::vector<Rational>> g(n + 1);
  g[0] = {Rational(1)};
  for (int i = 1; i <= n; ++i) {
    std::vector<Rational> acc(i / 2 + 1, Rational(0));
    for (int s = 2; s <= i; ++s)
      for (std::size_t d = 0; d < g[i - s].size(); ++d) acc[d] += g[i - s][d];
    std::vector<Rational> gi(i / 2 + 1, Rational(0));
    for (std::size_t d = 0; d + 1 < gi.size(); ++d) gi[d + 1] = -acc[d] / i;
    for (auto& c : gi) c.canonicalize();
    g[i] = std::move(gi);
  }
  return SeriesPolynomial{n, g[n]};
}

std::vector<Real> c_coeffs_at(const Real& t) {
  const Real c = log1p(Real(1L) / t);
  const Real h = t + Real(0.5);
  const Real h2 = h * h;
  return {c, -(h * c), h2 * h * c * c - h2 * c - h * c * c / Real(4L) + c / Real(6L)};
}

GeneralizedCoeffs c_coeffs(std::uint64_t t, int precision) {
  if (t < 1) throw std::invalid_argument("c_coeffs requires t >= 1");
  PrecisionGuard guard(precision + kGuardDigits);
  auto c = c_coeffs_at(Real(BigInt(std::to_string(t))));
  return GeneralizedCoeffs{t, 2 * t + 1, c[0], c[1], c[2]};
}

Real cft_inequality(std::uint64_t t, int precision) {
  if (t < 1) throw std::invalid_argument("cft_inequality requires t >= 1");
  PrecisionGuard guard(precision + kGuardDigits);
  const Real T(BigInt(std::to_string(t)));
  const Real t1 = Real(2L) * T + Real(1L);
  const Real c = log1p(Real(1L) / T);
  return t1 * t1 * t1 * c * c - Real(2L) * t1 * t1 * c - t1 * c * c + Real(4L) * c / Real(3L);
}

DelangeResidual delange_residual(std::int64_t m, const Real& k, int precision) {
  if (m < 3 || m > 10'000) throw std::invalid_argument("delange_residual requires 3 <= m <= 10^4");
  if (k.sign() <= 0) throw std::invalid_argument("delange_residual requires k > 0");
  PrecisionGuard guard(precision + kGuardDigits);
  const Real K(k);
  const Real base(static_cast<long>(m - 1));
  Real lhs = 0L;
  for (std::int64_t j = 1; j < m; ++j) lhs += pow(Real(static_cast<long>(j)) / base, K);
  const Real C = (K + Real(1L)) / base;
  DelangeResidual out;
  out.lhs = lhs;
  out.rho = lhs * -expm1(-C) - Real(1L);
  if (K > Real(1L)) {
    out.bound = sqrt(Real(2L) * (K + Real(1L))) * C / (sqrt(pi_const()) * (K - Real(1L)) * expm1(C));
  } else {
    out.bound = Real::infinity();
  }
  return out;
}

FitResult asymp_fit(const std::vector<std::pair<std::int64_t, Real>>& input, int depth, const Real& tolerance) {
  if (depth < 0) throw std::invalid_argument("asymp_fit depth must be non-negative");
  auto samples = input;
  std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i].first == samples[i - 1].first) throw std::invalid_argument("asymp_fit samples need distinct n");
  if (samples.size() < static_cast<std::size_t>(depth) + 2)
    throw std::invalid_argument("asymp_fit needs at least depth + 2 samples");
  for (const auto& s : samples)
    if (s.first <= 0) throw std::invalid_argument("asymp_fit requires positive n");

  const std::size_t size = samples.size();
  const std::size_t K = static_cast<std::size_t>(depth) + 1 + std::min<std::size_t>(3, size - depth - 2);
  const auto wide = fit_window(samples, spread(0, size - 1, K));
  const auto upper = fit_window(samples, spread(std::min(size / 2, size - K), size - 1, K));

  FitResult out;
  for (int i = 0; i <= depth; ++i) {
    out.coefficients.push_back(wide[i]);
    out.check.push_back(upper[i]);
    Real scale = abs(wide[i]);
    if (scale < Real(1L)) scale = 1L;
    if (abs(wide[i] - upper[i]) > tolerance * scale && out.stable) {
      out.stable = false;
      out.warning = "ill-conditioned fit: window estimates of c_" + std::to_string(i) + " disagree";
    }
  }
  return out;
}

std::vector<std::pair<std::int64_t, Real>> lambda_samples(const std::vector<RealRoot>& roots) {
  std::vector<std::pair<std::int64_t, Real>> out;
  out.reserve(roots.size());
  for (const auto& r : roots) out.emplace_back(r.m, r.k / Real(static_cast<long>(r.m)));
  return out;
}

}  // namespace emcf
