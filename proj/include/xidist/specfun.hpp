#pragma once

// Complex-plane evaluators for log Gamma, zeta, the completed zeta function xi,
// the theta kernel and the Riemann-Siegel Z function.
//
// xi follows the normalisation xi(s) = s (s-1) pi^{-s/2} Gamma(s/2) zeta(s),
// so xi(0) = xi(1) = 1 and xi(2) = pi/3.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "xidist/accuracy.hpp"
#include "xidist/errors.hpp"
#include "xidist/quadrature.hpp"

namespace xidist {

using Complex = std::complex<double>;

namespace detail {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kLogPi = 1.1447298858494001741434;
inline constexpr double kLog2 = std::numbers::ln2;
inline constexpr double kHalfLog2Pi = 0.91893853320467274178;
inline constexpr std::size_t kBernoulliTerms = 40;

/// Relative (to the L1 norm) floor below which Kronrod estimates are roundoff.
inline constexpr double kQuadFloor = 1e-12;

inline void require_finite(Complex s, const char* where) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
    throw DomainError(std::string(where) + ": non-finite argument");
  }
}

inline void require_finite(double x, const char* where) {
  if (!std::isfinite(x)) throw DomainError(std::string(where) + ": non-finite argument");
}

/// B_{2k} / (2k)! for k = 1..kBernoulliTerms (index 0 unused), from
/// B_{2k}/(2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}.
inline const std::array<double, kBernoulliTerms + 1>& bernoulli_ratio() {
  static const auto table = [] {
    std::array<double, kBernoulliTerms + 1> b{};
    for (std::size_t k = 1; k <= kBernoulliTerms; ++k) {
      const double two_k = 2.0 * static_cast<double>(k);
      double z = 0.0;
      if (k == 1) {
        z = kPi * kPi / 6.0;
      } else if (k == 2) {
        z = std::pow(kPi, 4) / 90.0;
      } else {
        for (int n = 2000; n >= 1; --n) z += std::pow(static_cast<double>(n), -two_k);
        z += std::pow(2000.5, 1.0 - two_k) / (two_k - 1.0);
      }
      const double sign = (k % 2 == 1) ? 1.0 : -1.0;
      b[k] = sign * 2.0 * z / std::pow(2.0 * kPi, two_k);
    }
    return b;
  }();
  return table;
}

/// Stirling coefficients B_{2k} / (2k (2k-1)).
inline const std::array<double, kBernoulliTerms + 1>& stirling_coefficients() {
  static const auto table = [] {
    std::array<double, kBernoulliTerms + 1> c{};
    const auto& b = bernoulli_ratio();
    double factorial = 1.0;  // (2k-2)!
    for (std::size_t k = 1; k <= kBernoulliTerms; ++k) {
      if (k > 1) factorial *= static_cast<double>((2 * k - 2) * (2 * k - 3));
      c[k] = b[k] * factorial;
    }
    return c;
  }();
  return table;
}

/// ln n for n < 8192.
inline double log_int(std::size_t n) {
  static const auto table = [] {
    std::vector<double> t(8192, 0.0);
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = std::log(static_cast<double>(i));
    return t;
  }();
  return n < table.size() ? table[n] : std::log(static_cast<double>(n));
}

/// Euler-Maclaurin split zeta(s) = head + pole / (s - 1), valid for Re s > -(2K+1).
struct ZetaParts {
  Complex head;
  Complex pole;  // N^{1-s}
  double error_bound = 0.0;
};

inline ZetaParts zeta_euler_maclaurin(Complex s, const EvalAccuracy& acc) {
  const double size = std::abs(s);
  const auto cut = static_cast<std::size_t>(
      std::max(10.0, std::ceil((size + 2.0 * static_cast<double>(kBernoulliTerms)) / kPi)));
  const double sigma = s.real();
  const double t = s.imag();

  Complex head = 0.0;
  for (std::size_t n = 1; n < cut; ++n) {
    const double ln = log_int(n);
    const double mag = std::exp(-sigma * ln);
    const double phase = t * ln;
    head += Complex(mag * std::cos(phase), -mag * std::sin(phase));
  }
  const double n = static_cast<double>(cut);
  const double ln_n = log_int(cut);
  const Complex n_pow = std::exp(-s * ln_n);  // N^{-s}
  head += 0.5 * n_pow;
  const Complex pole = n * n_pow;

  const auto& ratio = bernoulli_ratio();
  const std::size_t terms = std::min<std::size_t>(kBernoulliTerms, acc.max_terms);
  const double inv_n2 = 1.0 / (n * n);
  Complex rising = s;             // s (s+1) ... (s+2k-2)
  Complex power = n_pow / n;      // N^{-s-2k+1}
  double last = std::numeric_limits<double>::infinity();
  double target = 0.0;
  for (std::size_t k = 1; k <= terms; ++k) {
    const Complex term = ratio[k] * rising * power;
    head += term;
    last = std::abs(term);
    target = 0.1 * acc.target(std::abs(head));
    if (last <= target) break;
    const double kk = static_cast<double>(k);
    rising *= (s + (2.0 * kk - 1.0)) * (s + 2.0 * kk);
    power *= inv_n2;
  }
  if (!(last <= target)) {
    throw AccuracyError("zeta: Euler-Maclaurin tail did not reach tolerance", last);
  }
  return {head, pole, last};
}

/// log sin(z), finite even when |Im z| is large enough for sin(z) to overflow.
inline Complex log_sin(Complex z) {
  const Complex i(0.0, 1.0);
  if (std::abs(z.imag()) < 30.0) return std::log(std::sin(z));
  if (z.imag() > 0.0) return -i * z + std::log((std::exp(2.0 * i * z) - 1.0) / (2.0 * i));
  return i * z + std::log((1.0 - std::exp(-2.0 * i * z)) / (2.0 * i));
}

/// sin(pi s / 2) / (-s), continuous through s = 0.
inline Complex sin_half_pi_over_minus(Complex s) {
  const Complex z = 0.5 * kPi * s;
  if (std::abs(s) < 1e-3) {
    const Complex z2 = z * z;
    return -0.5 * kPi * (1.0 - z2 / 6.0 + z2 * z2 / 120.0);
  }
  if (std::abs(z.imag()) < 30.0) return std::sin(z) / (-s);
  return std::exp(log_sin(z) - std::log(-s));
}

}  // namespace detail

/// Principal branch of log Gamma(s): analytic off the non-positive real axis and
/// real for real s > 0. Argument shift into Re z >= 15, then Stirling's series.
inline Complex log_gamma(Complex s) {
  detail::require_finite(s, "log_gamma");
  if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real())) {
    throw PoleError("log_gamma: pole at non-positive integer " + std::to_string(s.real()));
  }
  if (s.real() < -1e5) throw DomainError("log_gamma: Re s below supported range");

  Complex shift = 0.0;
  Complex z = s;
  while (z.real() < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  const auto& c = detail::stirling_coefficients();
  Complex series = 0.0;
  Complex power = inv;
  for (std::size_t k = 1; k <= 14; ++k) {
    const Complex term = c[k] * power;
    series += term;
    if (std::abs(term) < 1e-18 * std::abs(series)) break;
    power *= inv2;
  }
  const Complex result = (z - 0.5) * std::log(z) - z + detail::kHalfLog2Pi + series - shift;
  if (!std::isfinite(result.real()) || !std::isfinite(result.imag())) {
    throw OverflowError("log_gamma: result overflowed");
  }
  return result;
}

inline Complex log_gamma(double x) { return log_gamma(Complex(x, 0.0)); }

/// (s - 1) zeta(s): entire, equal to 1 at s = 1.
inline Complex zeta_regularized(Complex s, const EvalAccuracy& acc = {});

/// Riemann zeta by Euler-Maclaurin summation for Re s > 0 and the
/// functional-equation reflection otherwise.
inline Complex zeta(Complex s, const EvalAccuracy& acc = {}) {
  acc.validate();
  detail::require_finite(s, "zeta");
  if (s == Complex(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
  if (s.real() > 0.0) {
    const auto parts = detail::zeta_euler_maclaurin(s, acc);
    return parts.head + parts.pole / (s - 1.0);
  }
  // zeta(s) = 2^s pi^{s-1} Gamma(1-s) [sin(pi s/2) / (-s)] (u-1) zeta(u), u = 1-s
  const Complex u = 1.0 - s;
  const Complex log_factor = s * detail::kLog2 + (s - 1.0) * detail::kLogPi + log_gamma(u);
  return std::exp(log_factor) * detail::sin_half_pi_over_minus(s) * zeta_regularized(u, acc);
}

inline Complex zeta_regularized(Complex s, const EvalAccuracy& acc) {
  acc.validate();
  detail::require_finite(s, "zeta_regularized");
  if (s.real() > 0.0) {
    const auto parts = detail::zeta_euler_maclaurin(s, acc);
    return (s - 1.0) * parts.head + parts.pole;
  }
  return (s - 1.0) * zeta(s, acc);
}

/// Completed zeta xi(s) = s (s-1) pi^{-s/2} Gamma(s/2) zeta(s), entire.
/// For Re s < 1/2 the Gamma/zeta product is rewritten with the reflection
/// and duplication formulas so the trivial zeros never meet Gamma's poles.
inline Complex xi(Complex s, const EvalAccuracy& acc = {}) {
  detail::require_finite(s, "xi");
  if (s.real() >= 0.5) {
    const Complex lg = log_gamma(0.5 * s) - 0.5 * s * detail::kLogPi;
    return s * zeta_regularized(s, acc) * std::exp(lg);
  }
  const Complex u = 1.0 - s;
  const Complex lg = s * detail::kLog2 + 0.5 * s * detail::kLogPi + log_gamma(u) -
                     log_gamma(1.0 - 0.5 * s);
  return -(s - 1.0) * std::exp(lg) * zeta_regularized(u, acc);
}

inline double xi(double sigma, const EvalAccuracy& acc = {}) {
  return xi(Complex(sigma, 0.0), acc).real();
}

/// f(x) = 2 pi (2 pi x^4 - 3 x^2) e^{-pi x^2}.
inline double theta_kernel(double x) {
  const double x2 = x * x;
  return 2.0 * detail::kPi * (2.0 * detail::kPi * x2 * x2 - 3.0 * x2) * std::exp(-detail::kPi * x2);
}

/// sum_{n >= 1} f(n x) for x > 0, truncated once the Gaussian term bound
/// 4 pi^2 (n x)^4 e^{-pi (n x)^2} falls below a tenth of the target.
inline double theta_series(double x, const EvalAccuracy& acc = {}) {
  detail::require_finite(x, "theta_series");
  if (!(x > 0.0)) throw DomainError("theta_series: x must be positive");
  double sum = 0.0;
  for (std::size_t n = 1;; ++n) {
    sum += theta_kernel(static_cast<double>(n) * x);
    const double next = static_cast<double>(n + 1) * x;
    const double next2 = next * next;
    const double bound = 4.0 * detail::kPi * detail::kPi * next2 * next2 * std::exp(-detail::kPi * next2);
    if (next >= 1.5 && bound < 0.1 * acc.target(sum)) break;
    if (n >= acc.max_terms) throw AccuracyError("theta_series: term budget exhausted", bound);
  }
  return sum;
}

/// xi(s) from the theta integral
///   xi(s) = 2 int_1^inf sum_n f(n x) (x^{s-1/2} + x^{1/2-s}) x^{-1/2} dx,
/// evaluated in u = log x as 2 int_0^U theta(e^u) 2 cosh((s-1/2) u) e^{u/2} du.
inline Complex xi_theta(Complex s, const EvalAccuracy& acc = {}) {
  acc.validate();
  detail::require_finite(s, "xi_theta");
  const Complex shift = s - 0.5;
  const double growth = std::abs(shift.real()) + 0.5;
  const double abs_target = std::max(acc.abs_tol, 1e-300);

  // Upper limit: integrand bound 8 pi^2 X^4 e^{-pi X^2} X^{growth} below 1e-3 of the target.
  double upper = 0.5;
  for (;; upper += 0.05) {
    const double x = std::exp(upper);
    const double bound = 16.0 * detail::kPi * detail::kPi * std::pow(x, 4.0 + growth) *
                         std::exp(-detail::kPi * x * x);
    if (bound < 1e-3 * abs_target && x > 1.5) break;
    if (upper > 10.0) throw AccuracyError("xi_theta: could not bound the tail", bound);
  }

  const auto integrand = [&](double u) {
    const double x = std::exp(u);
    return theta_series(x, acc) * 2.0 * std::cosh(shift * u) * std::exp(0.5 * u);
  };
  quad::Options opts;
  opts.rel_tol = std::max(acc.rel_tol, detail::kQuadFloor);
  opts.max_panel_width = std::min(0.25, 2.0 / (1.0 + std::abs(s.imag())));
  const auto r = quad::integrate(integrand, 0.0, upper, opts);
  const Complex value = 2.0 * r.value;
  const double allowed = std::max(acc.target(std::abs(value)), detail::kQuadFloor * r.l1) * 10.0;
  if (r.error > allowed) throw AccuracyError("xi_theta: quadrature tolerance not reached", r.error);
  return value;
}

/// Riemann-Siegel theta: arg of pi^{-it/2} Gamma(1/4 + it/2), continuous in t.
inline double siegel_theta(double t) {
  detail::require_finite(t, "siegel_theta");
  return log_gamma(Complex(0.25, 0.5 * t)).imag() - 0.5 * t * detail::kLogPi;
}

/// Z(t) = e^{i theta(t)} zeta(1/2 + it), real for real t with |Z(t)| = |zeta(1/2 + it)|.
inline double riemann_siegel_Z(double t, const EvalAccuracy& acc = {}) {
  detail::require_finite(t, "riemann_siegel_Z");
  if (t < 0.0) throw DomainError("riemann_siegel_Z: t must be non-negative");
  const Complex z = zeta(Complex(0.5, t), acc);
  const double th = siegel_theta(t);
  return (Complex(std::cos(th), std::sin(th)) * z).real();
}

}  // namespace xidist
