#pragma once

// Levy-Khintchine machinery for Xi_sigma: signed measures, quasi-Levy
// triplets and their characteristic functions, the zero product, the prime
// measure, the Gamma factor and the infinitely divisible Xi* variant.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/special_functions/expint.hpp>

#include "xidist/accuracy.hpp"
#include "xidist/errors.hpp"
#include "xidist/quadrature.hpp"
#include "xidist/specfun.hpp"
#include "xidist/zeros.hpp"

namespace xidist {

// ---------------------------------------------------------------- measures

enum class TermKind {
  gamma_part,     // x -> 1 / (x e^{sigma x} (1 - e^{-q x}))
  linear_part,    // x -> (1 + e^x) / (x e^{sigma x})
  zero_cos_part,  // x -> -2 cos(gamma x) e^{-c x} / x
  exp_part,       // x -> e^{-c x} / x
  gamma_excess_part,  // x -> 1 / (x e^{sigma x} (e^{q x} - 1)), gamma_part minus exp_part without cancellation
};

/// One tagged continuous density on (0, inf), scaled by `coefficient`.
struct DensityTerm {
  TermKind kind = TermKind::exp_part;
  double coefficient = 1.0;
  double sigma = 0.0;   // gamma_part, linear_part
  double period = 2.0;  // q in gamma_part
  double gamma = 0.0;   // zero_cos_part
  double offset = 0.0;  // c in zero_cos_part, exp_part

  static DensityTerm gamma_part(double sigma, double period = 2.0, double coefficient = 1.0) {
    return {TermKind::gamma_part, coefficient, sigma, period, 0.0, 0.0};
  }
  static DensityTerm linear_part(double sigma, double coefficient = -1.0) {
    return {TermKind::linear_part, coefficient, sigma, 0.0, 0.0, 0.0};
  }
  static DensityTerm zero_cos_part(double gamma, double offset, double coefficient = 1.0) {
    return {TermKind::zero_cos_part, coefficient, 0.0, 0.0, gamma, offset};
  }
  static DensityTerm exp_part(double offset, double coefficient = 1.0) {
    return {TermKind::exp_part, coefficient, 0.0, 0.0, 0.0, offset};
  }
  static DensityTerm gamma_excess_part(double sigma, double period = 2.0, double coefficient = 1.0) {
    return {TermKind::gamma_excess_part, coefficient, sigma, period, 0.0, 0.0};
  }

  double operator()(double x) const {
    switch (kind) {
      case TermKind::gamma_part:
        return coefficient * std::exp(-sigma * x) / (x * -std::expm1(-period * x));
      case TermKind::linear_part:
        return coefficient * (std::exp(-sigma * x) + std::exp((1.0 - sigma) * x)) / x;
      case TermKind::zero_cos_part:
        return coefficient * -2.0 * std::cos(gamma * x) * std::exp(-offset * x) / x;
      case TermKind::exp_part:
        return coefficient * std::exp(-offset * x) / x;
      case TermKind::gamma_excess_part:
        return coefficient * std::exp(-sigma * x) / (x * std::expm1(period * x));
    }
    return 0.0;
  }

  /// Slowest exponential decay rate at infinity.
  double decay_rate() const {
    switch (kind) {
      case TermKind::gamma_part: return sigma;
      case TermKind::linear_part: return sigma - 1.0;
      case TermKind::zero_cos_part:
      case TermKind::exp_part: return offset;
      case TermKind::gamma_excess_part: return sigma + period;
    }
    return 0.0;
  }

  /// Bound on |density| * x * e^{rate x} for x >= 1.
  double envelope() const {
    const double c = std::abs(coefficient);
    switch (kind) {
      case TermKind::gamma_part: return c / -std::expm1(-period);
      case TermKind::linear_part: return c * (1.0 + std::exp(-1.0));
      case TermKind::zero_cos_part: return 2.0 * c;
      case TermKind::exp_part: return c;
      case TermKind::gamma_excess_part: return c / -std::expm1(-period);
    }
    return 0.0;
  }

  /// 1/x^2 at the origin (gamma_part) rather than 1/x.
  bool second_order_at_zero() const { return kind == TermKind::gamma_part || kind == TermKind::gamma_excess_part; }
};

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

/// Sum of continuous density terms on (0, inf) plus point masses.
/// `atom_tail_bound` bounds the total |mass| of atoms dropped by a cutoff.
struct SignedMeasure {
  std::vector<DensityTerm> continuous_terms;
  std::vector<Atom> atoms;
  double atom_tail_bound = 0.0;

  double continuous_density(double x) const {
    double sum = 0.0;
    for (const auto& term : continuous_terms) sum += term(x);
    return sum;
  }
};

/// (a, drift, nu) with compensator on [0, b]; b = 0 means no compensator.
struct QuasiLevyTriplet {
  double a = 0.0;
  double drift = 0.0;
  SignedMeasure measure;
  double truncation_halfwidth = 0.0;
};

struct PrimeCutoff {
  std::uint64_t p_max = 100000;
  int r_max = 40;

  void validate() const {
    if (p_max < 2 || r_max < 1) throw DomainError("PrimeCutoff: need p_max >= 2 and r_max >= 1");
  }
};

// ------------------------------------------------------- small kernels

namespace detail {

/// e^{i theta} - 1 without cancellation for small theta.
inline Complex expm1_i(double theta) {
  const double s = std::sin(0.5 * theta);
  return {-2.0 * s * s, std::sin(theta)};
}

/// e^{i theta} - 1 - i theta.
inline Complex expm1_i_compensated(double theta) {
  const double s = std::sin(0.5 * theta);
  double im;
  if (std::abs(theta) < 1e-2) {
    const double t2 = theta * theta;
    im = -theta * t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0 * (1.0 - t2 / 72.0)));
  } else {
    im = std::sin(theta) - theta;
  }
  return {-2.0 * s * s, im};
}

/// log(1 + w) on the principal branch, accurate for small |w|.
inline Complex log1p_complex(Complex w) {
  const double re = w.real(), im = w.imag();
  return {0.5 * std::log1p(2.0 * re + re * re + im * im), std::atan2(im, 1.0 + re)};
}

/// Compensated summation for complex addends.
class ComplexSum {
 public:
  void add(Complex v) {
    add_part(re_, cre_, v.real());
    add_part(im_, cim_, v.imag());
  }
  Complex value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void add_part(double& sum, double& comp, double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double re_ = 0.0, cre_ = 0.0, im_ = 0.0, cim_ = 0.0;
};

inline void require_positive_real(Complex alpha, const char* where) {
  require_finite(alpha, where);
  if (!(alpha.real() > 0.0)) throw DomainError(std::string(where) + ": Re(alpha) must be positive");
}

}  // namespace detail

// --------------------------------------------------- triplet evaluation

struct TripletLogCf {
  Complex value;              // exponent of the characteristic function
  double quadrature_error = 0.0;
  double atom_tail_bound = 0.0;  // |exponent error| from atoms beyond the cutoff
};

/// Exponent -a t^2/2 + i drift t + int (e^{itx} - 1 - itx 1_{[0,b]}(x)) nu(dx).
/// Atoms are summed exactly; the continuous part is integrated to an upper
/// limit where the exponential envelope of every term falls below the target.
inline TripletLogCf evaluate_triplet_log(const QuasiLevyTriplet& tr, double t, const EvalAccuracy& acc = {}) {
  acc.validate();
  detail::require_finite(t, "cf_from_triplet");
  if (!(tr.a >= 0.0)) throw DomainError("cf_from_triplet: Gaussian coefficient must be >= 0");
  const double b = tr.truncation_halfwidth;
  if (!(b >= 0.0)) throw DomainError("cf_from_triplet: truncation halfwidth must be >= 0");
  const auto& terms = tr.measure.continuous_terms;

  double min_rate = HUGE_VAL, envelope = 0.0, max_freq = 0.0;
  for (const auto& term : terms) {
    if (!(term.decay_rate() > 0.0)) {
      throw NonIntegrableError("cf_from_triplet: continuous term does not decay at infinity");
    }
    if (term.second_order_at_zero() && b == 0.0) {
      throw NonIntegrableError("cf_from_triplet: 1/x^2 density needs a compensator (b > 0)");
    }
    min_rate = std::min(min_rate, term.decay_rate());
    envelope += term.envelope();
    if (term.kind == TermKind::zero_cos_part) max_freq = std::max(max_freq, std::abs(term.gamma));
  }

  TripletLogCf out;
  out.atom_tail_bound = 2.0 * tr.measure.atom_tail_bound;
  if (t == 0.0) return out;

  detail::ComplexSum sum;
  sum.add(Complex(-0.5 * tr.a * t * t, tr.drift * t));
  for (const auto& atom : tr.measure.atoms) {
    const double theta = t * atom.location;
    sum.add(atom.mass * (atom.location <= b ? detail::expm1_i_compensated(theta) : detail::expm1_i(theta)));
  }

  if (!terms.empty()) {
    // Tail beyond X: |e^{itx} - 1| <= 2, so <= 2 envelope e^{-rate X} / (rate X).
    const double target = std::max(acc.abs_tol, 1e-16);
    double upper = std::max(1.0, 2.0 * b);
    while (2.0 * envelope * std::exp(-min_rate * upper) / (min_rate * upper) > 0.1 * target) upper *= 1.25;

    quad::Options opts;
    opts.rel_tol = std::max(acc.rel_tol, detail::kQuadFloor);
    opts.max_panel_width = std::min(0.5, 1.0 / (1.0 + std::abs(t) + max_freq));
    const auto density = [&](double x) { return tr.measure.continuous_density(x); };
    double err = 0.0, l1 = 0.0;
    if (b > 0.0) {
      const auto r = quad::integrate([&](double x) { return detail::expm1_i_compensated(t * x) * density(x); },
                                     0.0, std::min(b, upper), opts);
      sum.add(r.value);
      err += r.error;
      l1 += r.l1;
    }
    if (upper > b) {
      const auto r = quad::integrate([&](double x) { return detail::expm1_i(t * x) * density(x); }, b, upper, opts);
      sum.add(r.value);
      err += r.error;
      l1 += r.l1;
    }
    out.quadrature_error = err;
    const double allowed = 10.0 * std::max(acc.target(std::abs(sum.value())), detail::kQuadFloor * l1);
    if (err > allowed) throw AccuracyError("cf_from_triplet: quadrature tolerance not reached", err);
  }
  out.value = sum.value();
  return out;
}

inline Complex log_cf_from_triplet(const QuasiLevyTriplet& tr, double t, const EvalAccuracy& acc = {}) {
  return evaluate_triplet_log(tr, t, acc).value;
}

/// exp of the triplet exponent; exactly 1 at t = 0.
inline Complex cf_from_triplet(const QuasiLevyTriplet& tr, double t, const EvalAccuracy& acc = {}) {
  return std::exp(log_cf_from_triplet(tr, t, acc));
}

// ------------------------------------------------ exponential factors

/// log(alpha / (alpha - i z)) = int_0^inf (e^{izx} - 1) e^{-alpha x} dx / x,
/// as -log1p(-i z / alpha) so it is continuous in z and 0 at z = 0.
inline Complex exp_factor_log(Complex alpha, double z) {
  detail::require_positive_real(alpha, "exp_factor_log");
  detail::require_finite(z, "exp_factor_log");
  if (z == 0.0) return {0.0, 0.0};
  return -detail::log1p_complex(Complex(0.0, -z) / alpha);
}

/// The same integral evaluated by quadrature, for cross-checking the closed form.
inline Complex exp_factor_log_by_quadrature(Complex alpha, double z, const EvalAccuracy& acc = {}) {
  detail::require_positive_real(alpha, "exp_factor_log_by_quadrature");
  const double rate = alpha.real();
  const double target = std::max(acc.abs_tol, 1e-16);
  double upper = 1.0;
  while (2.0 * std::exp(-rate * upper) / (rate * upper) > 0.1 * target) upper *= 1.25;
  quad::Options opts;
  opts.max_panel_width = std::min(0.5, 1.0 / (1.0 + std::abs(z) + std::abs(alpha.imag())));
  const auto r = quad::integrate(
      [&](double x) { return detail::expm1_i(z * x) * std::exp(-alpha * x) / x; }, 0.0, upper, opts);
  return r.value;
}

/// log phi_rho(t) for the zero pair 1/2 +- i gamma:
///   log[(c - i gamma - it)(c + i gamma - it) / ((c - i gamma)(c + i gamma))], c = sigma - 1/2,
/// accumulated factor by factor.
inline Complex phi_rho_log(double sigma, double gamma, double t) {
  detail::require_finite(sigma, "phi_rho_log");
  if (!(sigma > 0.5)) throw DomainError("phi_rho_log: sigma must exceed 1/2");
  if (!(gamma > 0.0)) throw DomainError("phi_rho_log: gamma must be positive");
  const double c = sigma - 0.5;
  return -exp_factor_log(Complex(c, -gamma), t) - exp_factor_log(Complex(c, gamma), t);
}

/// Pair term for a zero beta + i gamma off the critical line: the four factors
/// with offsets sigma - beta and sigma - 1 + beta, each with +- i gamma.
inline Complex off_line_pair_log(double sigma, double beta, double gamma, double t) {
  const double c1 = sigma - beta, c2 = sigma - 1.0 + beta;
  if (!(c1 > 0.0) || !(c2 > 0.0)) {
    throw DomainError("off_line_pair_log: sigma must exceed max(beta, 1 - beta)");
  }
  if (!(gamma > 0.0)) throw DomainError("off_line_pair_log: gamma must be positive");
  return -exp_factor_log(Complex(c1, -gamma), t) - exp_factor_log(Complex(c2, -gamma), t) -
         exp_factor_log(Complex(c1, gamma), t) - exp_factor_log(Complex(c2, gamma), t);
}

/// |phi_rho(t)|^2 = ((D - t^2)^2 + ((2 sigma - 1) t)^2) / D^2 with D = (sigma - 1/2)^2 + gamma^2.
inline double phi_modulus_squared(double sigma, double gamma, double t) {
  const double c = sigma - 0.5;
  const double d = c * c + gamma * gamma;
  const double u = d - t * t, v = (2.0 * sigma - 1.0) * t;
  return (u * u + v * v) / (d * d);
}

/// |phi_rho(t)|^2 from the factor logs.
inline double phi_modulus_squared_from_log(double sigma, double gamma, double t) {
  return std::exp(2.0 * phi_rho_log(sigma, gamma, t).real());
}

/// The single-zero signed measure -2 cos(gamma x) e^{-(sigma - 1/2) x} / x with no compensator.
inline QuasiLevyTriplet zero_pair_triplet(double sigma, double gamma) {
  QuasiLevyTriplet tr;
  tr.measure.continuous_terms.push_back(DensityTerm::zero_cos_part(gamma, sigma - 0.5));
  return tr;
}

// -------------------------------------------------------- zero product

struct ZeroProductCf {
  Complex value;
  Complex log_value;
  double tail_estimate = 0.0;  // sum_{k > K, gamma_k <= t_max} |t| (|t| + 2c) / gamma_k^2
  std::size_t zeros_used = 0;
};

/// Product over the first K critical-line zeros of phi_rho(t), times the
/// four-factor terms of every off-line record.
inline ZeroProductCf cf_from_zeros(double sigma, double t, const ZeroList& zl, std::size_t K) {
  detail::require_finite(sigma, "cf_from_zeros");
  detail::require_finite(t, "cf_from_zeros");
  if (!(sigma > 0.5)) throw DomainError("cf_from_zeros: sigma must exceed 1/2");
  if (K == 0) throw DomainError("cf_from_zeros: K must be positive");
  if (K > zl.records.size()) {
    throw InsufficientZerosError("cf_from_zeros: " + std::to_string(K) + " zeros requested, " +
                                 std::to_string(zl.records.size()) + " available");
  }
  ZeroProductCf out;
  out.zeros_used = K;
  if (t == 0.0) {
    out.value = {1.0, 0.0};
    return out;
  }
  detail::ComplexSum sum;
  for (std::size_t k = 0; k < K; ++k) sum.add(phi_rho_log(sigma, zl.records[k].gamma, t));
  for (const auto& r : zl.off_line) sum.add(off_line_pair_log(sigma, r.beta, r.gamma, t));
  out.log_value = sum.value();
  out.value = std::exp(out.log_value);
  const double scale = std::abs(t) * (std::abs(t) + 2.0 * (sigma - 0.5));
  for (std::size_t k = K; k < zl.records.size(); ++k) {
    out.tail_estimate += scale / (zl.records[k].gamma * zl.records[k].gamma);
  }
  return out;
}

/// Sum over zeros above T of 1/gamma^2 from the zero density log(g / 2 pi) / 2 pi.
inline double zero_tail_sum_estimate(double t_above) {
  return (std::log(t_above / (2.0 * std::numbers::pi)) + 1.0) / (2.0 * std::numbers::pi * t_above);
}

// --------------------------------------------------------------- primes

/// Primes up to n, by a byte sieve over odd numbers.
inline std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
  if (n > 4000000000ULL) throw DomainError("primes_up_to: bound too large");
  std::vector<std::uint32_t> primes;
  if (n < 2) return primes;
  primes.push_back(2);
  const std::uint64_t half = (n - 1) / 2;  // index i -> 2i + 1, i >= 1
  std::vector<unsigned char> composite(half + 1, 0);
  for (std::uint64_t i = 1; i <= half; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    primes.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t j = (p * p - 1) / 2; j <= half; j += p) composite[j] = 1;
  }
  return primes;
}

/// Bound on sum_{p, r beyond the cutoff} p^{-r sigma} / r, the total mass
/// dropped from the prime measure: sum_{n > P} n^{-sigma} <= P^{1-sigma}/(sigma-1)
/// for p > P, and a geometric bound on r > r_max for p <= P.
inline double prime_tail_mass_bound(double sigma, const PrimeCutoff& cut) {
  if (!(sigma > 1.0)) throw DomainError("prime_tail_mass_bound: sigma must exceed 1");
  const double p = static_cast<double>(cut.p_max);
  const double big = std::pow(p, 1.0 - sigma) / (sigma - 1.0) / (1.0 - std::pow(p, -sigma));
  const double k = (cut.r_max + 1) * sigma;
  const double powers = std::pow(2.0, -k) * (1.0 + 2.0 / (k - 1.0)) / (1.0 - std::pow(2.0, -sigma));
  return big + powers;
}

namespace detail {

/// Calls f(location, mass) for r log p, p^{-r sigma}/r; terms whose remaining
/// geometric tail is below 1e-25 are not visited.
template <typename F>
void for_each_prime_atom(double sigma, const std::vector<std::uint32_t>& primes, int r_max, F&& f) {
  for (std::uint32_t p : primes) {
    const double lp = std::log(static_cast<double>(p));
    const double w = std::exp(-sigma * lp);
    double pw = w;
    for (int r = 1; r <= r_max; ++r) {
      if (pw / (1.0 - w) < 1e-25) break;
      f(r * lp, pw / r);
      pw *= w;
    }
  }
}

}  // namespace detail

/// sum_{p <= p_max} sum_{r <= r_max} (p^{-r sigma} / r)(e^{i r t log p} - 1),
/// the prime-measure form of log(zeta(sigma - it) / zeta(sigma)).
inline Complex prime_log_ratio(double sigma, double t, const std::vector<std::uint32_t>& primes, int r_max) {
  detail::require_finite(sigma, "prime_log_ratio");
  detail::require_finite(t, "prime_log_ratio");
  if (!(sigma > 1.0)) throw DomainError("prime_log_ratio: sigma must exceed 1");
  if (t == 0.0) return {0.0, 0.0};
  detail::ComplexSum sum;
  detail::for_each_prime_atom(sigma, primes, r_max,
                              [&](double x, double m) { sum.add(m * detail::expm1_i(t * x)); });
  return sum.value();
}

inline Complex prime_log_ratio(double sigma, double t, const PrimeCutoff& cut = {}) {
  cut.validate();
  return prime_log_ratio(sigma, t, primes_up_to(cut.p_max), cut.r_max);
}

inline std::vector<Atom> prime_atoms(double sigma, const std::vector<std::uint32_t>& primes, int r_max) {
  std::vector<Atom> atoms;
  detail::for_each_prime_atom(sigma, primes, r_max, [&](double x, double m) { atoms.push_back({x, m}); });
  return atoms;
}

// ---------------------------------------------------------------- Gamma

/// C(sigma) = int_0^1 (e^{-sigma x}/(1 - e^{-x}) - e^{-x}/x) dx - int_1^inf e^{-x} dx / x,
/// with the integrand rearranged as
///   e^{-x} expm1((1 - sigma) x) / x + e^{-sigma x} (1/(1 - e^{-x}) - 1/x)
/// to avoid cancelling the two 1/x singularities.
inline double gamma_drift(double sigma) {
  detail::require_finite(sigma, "gamma_drift");
  if (!(sigma > 0.0)) throw DomainError("gamma_drift: sigma must be positive");
  const auto integrand = [&](double x) {
    const double bern = x < 1e-3 ? 0.5 + x / 12.0 - x * x * x / 720.0 : 1.0 / -std::expm1(-x) - 1.0 / x;
    return std::exp(-x) * std::expm1((1.0 - sigma) * x) / x + std::exp(-sigma * x) * bern;
  };
  quad::Options opts;
  opts.max_panel_width = 0.125;
  const auto r = quad::integrate(integrand, 0.0, 1.0, opts);
  if (r.error > 10.0 * detail::kQuadFloor * std::max(1.0, r.l1)) throw AccuracyError("gamma_drift: quadrature tolerance not reached", r.error);
  return r.value - boost::math::expint(1, 1.0);
}

/// Levy triplet of Gamma(sigma - it)/Gamma(sigma): drift C(sigma), density
/// 1/(x e^{sigma x}(1 - e^{-x})), compensator on [0, 1].
inline QuasiLevyTriplet gamma_levy_triplet(double sigma) {
  QuasiLevyTriplet tr;
  tr.drift = gamma_drift(sigma);
  tr.measure.continuous_terms.push_back(DensityTerm::gamma_part(sigma, 1.0));
  tr.truncation_halfwidth = 1.0;
  return tr;
}

/// log(Gamma(sigma - it)/Gamma(sigma)) from its Levy-Khintchine form.
inline Complex gamma_levy_log(double sigma, double t, const EvalAccuracy& acc = {}) {
  if (!(sigma > 0.0)) throw DomainError("gamma_levy_log: sigma must be positive");
  return log_cf_from_triplet(gamma_levy_triplet(sigma), t, acc);
}

// ------------------------------------------------------ prime triplet

/// Drift of the prime-measure triplet for sigma > 1:
///   (e^{-sigma/2} - 1)/sigma + (e^{(1-sigma)/2} - 1)/(sigma - 1) + log(pi)/2 + C(sigma/2)/2.
inline double prime_levy_drift(double sigma) {
  if (!(sigma > 1.0)) throw DomainError("prime_levy_drift: sigma must exceed 1");
  return std::expm1(-0.5 * sigma) / sigma + std::expm1(0.5 * (1.0 - sigma)) / (sigma - 1.0) +
         0.5 * detail::kLogPi + 0.5 * gamma_drift(0.5 * sigma);
}

/// Triplet of Xi_sigma for sigma > 1: a = 0, b = 1/2, density
/// 1/(x e^{sigma x}(1 - e^{-2x})) - (1 + e^x)/(x e^{sigma x}) and prime atoms
/// (r log p, p^{-r sigma}/r) up to the cutoff.
inline QuasiLevyTriplet build_prime_levy_triplet(double sigma, const std::vector<std::uint32_t>& primes, int r_max,
                                                 const PrimeCutoff& cut) {
  detail::require_finite(sigma, "build_prime_levy_triplet");
  if (!(sigma > 1.0)) throw DomainError("build_prime_levy_triplet: sigma must exceed 1");
  QuasiLevyTriplet tr;
  tr.drift = prime_levy_drift(sigma);
  tr.truncation_halfwidth = 0.5;
  tr.measure.continuous_terms = {DensityTerm::gamma_part(sigma, 2.0), DensityTerm::linear_part(sigma, -1.0)};
  tr.measure.atoms = prime_atoms(sigma, primes, r_max);
  tr.measure.atom_tail_bound = prime_tail_mass_bound(sigma, cut);
  return tr;
}

inline QuasiLevyTriplet build_prime_levy_triplet(double sigma, const PrimeCutoff& cut = {}) {
  cut.validate();
  if (!(sigma > 1.0)) throw DomainError("build_prime_levy_triplet: sigma must exceed 1");
  return build_prime_levy_triplet(sigma, primes_up_to(cut.p_max), cut.r_max, cut);
}

// ------------------------------------------------------------------ Xi*

/// Xi*_sigma(t) = (sigma - 1)/(sigma - 1 - it) Xi_sigma(t), sigma != 1.
inline Complex cf_xi_star(double sigma, double t, const EvalAccuracy& acc = {}) {
  detail::require_finite(sigma, "cf_xi_star");
  detail::require_finite(t, "cf_xi_star");
  if (sigma == 1.0) throw DomainError("cf_xi_star: sigma must differ from 1");
  if (t == 0.0) return {1.0, 0.0};
  const Complex cf = xi(Complex(sigma, -t), acc) / xi(sigma, acc);
  return (sigma - 1.0) / Complex(sigma - 1.0, -t) * cf;
}

/// Drift of the Xi* triplet: (e^{-sigma/2} - 1)/sigma + log(pi)/2 + C(sigma/2)/2.
inline double xi_star_drift(double sigma) {
  if (!(sigma > 1.0)) throw DomainError("xi_star_drift: sigma must exceed 1");
  return std::expm1(-0.5 * sigma) / sigma + 0.5 * detail::kLogPi + 0.5 * gamma_drift(0.5 * sigma);
}

/// Triplet of Xi*_sigma for sigma > 1: density
/// 1/(x e^{sigma x}(1 - e^{-2x})) - 1/(x e^{sigma x}) = 1/(x e^{sigma x}(e^{2x} - 1)),
/// positive and kept as one term so it does not cancel to 0 at large x, plus the prime atoms.
inline QuasiLevyTriplet build_xi_star_triplet(double sigma, const std::vector<std::uint32_t>& primes, int r_max,
                                              const PrimeCutoff& cut) {
  detail::require_finite(sigma, "build_xi_star_triplet");
  if (!(sigma > 1.0)) throw DomainError("build_xi_star_triplet: sigma must exceed 1");
  QuasiLevyTriplet tr;
  tr.drift = xi_star_drift(sigma);
  tr.truncation_halfwidth = 0.5;
  tr.measure.continuous_terms = {DensityTerm::gamma_excess_part(sigma, 2.0)};
  tr.measure.atoms = prime_atoms(sigma, primes, r_max);
  tr.measure.atom_tail_bound = prime_tail_mass_bound(sigma, cut);
  return tr;
}

inline QuasiLevyTriplet build_xi_star_triplet(double sigma, const PrimeCutoff& cut = {}) {
  cut.validate();
  if (!(sigma > 1.0)) throw DomainError("build_xi_star_triplet: sigma must exceed 1");
  return build_xi_star_triplet(sigma, primes_up_to(cut.p_max), cut.r_max, cut);
}

// ------------------------------------------------------ total variation

struct TotalVariation {
  double value = 0.0;        // last partial integral, including atoms
  double atomic_part = 0.0;
  double continuous_part = 0.0;
  std::vector<std::pair<double, double>> partials;  // (X, integral over (0, X])
  bool converged = false;
  double tail_bound = 0.0;   // envelope bound on the continuous part beyond the last X
};

/// int (x^2 ^ 1) |nu|(dx): the |continuous density| integrated over (0, X]
/// for X = 10, 100, 1000, plus sum (x^2 ^ 1)|mass| over atoms. The
/// result is flagged converged once two successive partials agree to 1e-10
/// relative; a measure whose |density| decays like 1/x never converges and the
/// partials then grow like log X.
inline TotalVariation total_variation_integral(const SignedMeasure& m) {
  TotalVariation out;
  detail::ComplexSum atomic;
  for (const auto& a : m.atoms) atomic.add(std::min(a.location * a.location, 1.0) * std::abs(a.mass));
  out.atomic_part = atomic.value().real();

  double min_rate = HUGE_VAL, envelope = 0.0, max_freq = 0.0;
  for (const auto& term : m.continuous_terms) {
    min_rate = std::min(min_rate, term.decay_rate());
    envelope += term.envelope();
    if (term.kind == TermKind::zero_cos_part) max_freq = std::max(max_freq, std::abs(term.gamma));
  }
  const auto weighted = [&](double x) { return std::min(x * x, 1.0) * std::abs(m.continuous_density(x)); };
  // |density| has kinks wherever the density changes sign; a shallow
  // recursion on short panels is plenty at the 1e-10 level reported here.
  quad::Options opts;
  opts.rel_tol = 1e-11;
  opts.max_depth = 8;
  opts.max_panel_width = std::min(0.5, 0.5 / (1.0 + max_freq));

  double running = 0.0, lo = 0.0;
  for (double x_hi : {10.0, 100.0, 1000.0}) {
    if (!m.continuous_terms.empty()) {
      if (lo < 1.0) {
        running += quad::integrate(weighted, lo, 1.0, opts).value;
        lo = 1.0;
      }
      running += quad::integrate(weighted, lo, x_hi, opts).value;
    }
    lo = x_hi;
    out.partials.emplace_back(x_hi, running + out.atomic_part);
    const std::size_t n = out.partials.size();
    if (n >= 2 && std::abs(out.partials[n - 1].second - out.partials[n - 2].second) <=
                      1e-10 * std::max(1.0, std::abs(out.partials[n - 1].second))) {
      out.converged = true;
      break;
    }
  }
  out.continuous_part = running;
  out.value = running + out.atomic_part;
  const double last = out.partials.back().first;
  out.tail_bound = m.continuous_terms.empty() ? 0.0
                   : min_rate > 0.0           ? envelope * std::exp(-min_rate * last) / (min_rate * last)
                                              : HUGE_VAL;
  return out;
}

/// Bound chain for the prime measure at sigma > 1:
/// atoms < zeta(sigma) + zeta(2 sigma)/(1 - 2^{-sigma}), gamma part
/// < 1/((1 - e^{-2}) sigma), linear part < 2/(sigma - 1).
struct PrimeMeasureBounds {
  double atomic = 0.0;
  double gamma_part = 0.0;
  double linear_part = 0.0;
  double total() const { return atomic + gamma_part + linear_part; }
};

inline PrimeMeasureBounds prime_measure_bounds(double sigma) {
  if (!(sigma > 1.0)) throw DomainError("prime_measure_bounds: sigma must exceed 1");
  PrimeMeasureBounds b;
  b.atomic = zeta(Complex(sigma, 0.0)).real() + zeta(Complex(2.0 * sigma, 0.0)).real() / (1.0 - std::pow(2.0, -sigma));
  b.gamma_part = 1.0 / ((1.0 - std::exp(-2.0)) * sigma);
  b.linear_part = 2.0 / (sigma - 1.0);
  return b;
}

}  // namespace xidist
