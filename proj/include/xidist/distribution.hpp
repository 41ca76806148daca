#pragma once

// The completed Riemann zeta distribution: the law on R whose characteristic
// function is Xi_sigma(t) = xi(sigma - it) / xi(sigma).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "xidist/accuracy.hpp"
#include "xidist/errors.hpp"
#include "xidist/quadrature.hpp"
#include "xidist/specfun.hpp"

namespace xidist {

/// Sampled pdf/cdf on a fixed grid. cdf[i] is the integral of the density
/// up to grid[i], accumulated interval by interval with Gauss-Legendre.
struct DensityTable {
  std::vector<double> grid;
  std::vector<double> pdf;
  std::vector<double> cdf;
};

namespace detail {

inline constexpr double kTableHalfWidth = 40.0;
inline constexpr std::size_t kTableNodes = 4001;
inline constexpr double kTableStretch = 8.0;

/// y_i = 40 sinh(8 u_i) / sinh(8), u_i uniform on [-1, 1]: spacing about 1e-4
/// near 0, widening towards +-40 where the density has long underflowed.
inline std::vector<double> table_grid() {
  std::vector<double> g(kTableNodes);
  const double scale = kTableHalfWidth / std::sinh(kTableStretch);
  const std::size_t mid = kTableNodes / 2;
  for (std::size_t i = 0; i < kTableNodes; ++i) {
    const double u = (static_cast<double>(i) - static_cast<double>(mid)) / static_cast<double>(mid);
    g[i] = scale * std::sinh(kTableStretch * u);
  }
  g[mid] = 0.0;
  return g;
}

}  // namespace detail

class XiDistribution {
 public:
  /// Normalizes by xi(sigma). The sign of xi(sigma) is checked against the
  /// theta-integral evaluation, which is positive by construction of the
  /// integrand; a disagreement throws AccuracyError.
  explicit XiDistribution(double sigma, const EvalAccuracy& acc = {}) : sigma_(sigma), acc_(acc) {
    acc_.validate();
    detail::require_finite(sigma, "XiDistribution");
    if (std::abs(sigma) > 50.0) throw DomainError("XiDistribution: |sigma| must be <= 50");
    xi_sigma_ = xi(sigma, acc_);
    xi_sigma_theta_ = xi_theta(Complex(sigma, 0.0), acc_).real();
    if (!(xi_sigma_ > 0.0) || !(xi_sigma_theta_ > 0.0)) {
      throw AccuracyError("XiDistribution: xi(sigma) is not positive on both evaluation routes",
                          std::abs(xi_sigma_ - xi_sigma_theta_));
    }
    // The density is exp(-pi e^{2|y|}) small beyond this, whatever sigma.
    support_ = 0.5;
    while (support_ < detail::kTableHalfWidth &&
           (density(support_) > 0.0 || density(-support_) > 0.0)) {
      support_ += 0.25;
    }
    build_table();
  }

  double sigma() const { return sigma_; }
  double xi_sigma() const { return xi_sigma_; }
  /// xi(sigma) from the theta integral; the route that settles its sign.
  double xi_sigma_theta() const { return xi_sigma_theta_; }
  const EvalAccuracy& accuracy() const { return acc_; }
  /// The density is exactly 0.0 in double precision outside [-support, support].
  double support() const { return support_; }
  const DensityTable& table() const { return table_; }

  /// P_sigma(y) = (2/xi(sigma)) sum_n f(n e^{-y}) e^{-sigma y}        for y <= 0,
  ///              (2/xi(sigma)) sum_n f(n e^{y})  e^{(1-sigma) y}     for y > 0.
  double density(double y) const {
    detail::require_finite(y, "density");
    const double x = std::exp(std::abs(y));
    if (!std::isfinite(x)) return 0.0;
    const double series = theta_series(x, acc_);
    if (series == 0.0) return 0.0;
    const double weight = y <= 0.0 ? -sigma_ * y : (1.0 - sigma_) * y;
    return 2.0 / xi_sigma_ * series * std::exp(weight);
  }

  /// Xi_sigma(t) = xi(sigma - it) / xi(sigma); exactly 1 at t = 0.
  Complex cf_direct(double t) const {
    detail::require_finite(t, "cf_direct");
    if (t == 0.0) return {1.0, 0.0};
    return xi(Complex(sigma_, -t), acc_) / xi_sigma_;
  }

  /// int e^{ity} P_sigma(y) dy by quadrature over the support; |t| <= 50.
  Complex cf_from_density(double t) const {
    detail::require_finite(t, "cf_from_density");
    if (std::abs(t) > 50.0) throw DomainError("cf_from_density: |t| must be <= 50");
    quad::Options opts;
    opts.max_panel_width = std::min(0.25, 1.0 / (1.0 + std::abs(t)));
    const auto f = [&](double y) { return std::polar(density(y), t * y); };
    const auto r = quad::integrate(f, -support_, support_, opts);
    if (r.error > 1e-10) throw AccuracyError("cf_from_density: quadrature tolerance not reached", r.error);
    return r.value;
  }

  /// Mass of the density by adaptive quadrature over the support.
  double total_mass() const {
    quad::Options opts;
    opts.max_panel_width = 0.125;
    const auto r = quad::integrate([&](double y) { return density(y); }, -support_, support_, opts);
    if (r.error > 1e-10) throw AccuracyError("total_mass: quadrature tolerance not reached", r.error);
    return r.value;
  }

  /// Integral of the density over (-inf, y]: tabulated cdf at the grid node
  /// below y plus a 15-point Gauss-Legendre integral over the remainder.
  double cdf(double y) const {
    if (std::isnan(y)) throw DomainError("cdf: NaN argument");
    const auto& g = table_.grid;
    if (y <= g.front()) return 0.0;
    if (y >= g.back()) return table_.cdf.back();
    const std::size_t i = static_cast<std::size_t>(std::upper_bound(g.begin(), g.end(), y) - g.begin()) - 1;
    return table_.cdf[i] + segment_mass(g[i], y);
  }

  /// Smallest y with cdf(y) >= u, by bisection to a bracket of width 1e-9.
  double quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile: u must lie in (0, 1)");
    const auto& c = table_.cdf;
    if (u > c.back()) throw AccuracyError("quantile: u exceeds the tabulated total mass", u - c.back());
    const std::size_t hi_idx = static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), u) - c.begin());
    double lo = table_.grid[hi_idx == 0 ? 0 : hi_idx - 1];
    double hi = table_.grid[hi_idx];
    while (hi - lo > 1e-9) {
      const double mid = 0.5 * (lo + hi);
      if (cdf(mid) < u) lo = mid;
      else hi = mid;
    }
    return 0.5 * (lo + hi);
  }

  /// n draws by inverse cdf on the table with linear interpolation between
  /// nodes. Uniforms are the top 53 bits of mt19937_64 centred in their cell.
  std::vector<double> sample(std::size_t n, std::uint64_t seed) const {
    if (n == 0) throw DomainError("sample: n must be >= 1");
    std::mt19937_64 gen(seed);
    const auto& c = table_.cdf;
    const auto& g = table_.grid;
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double u = (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
      const std::size_t j = static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), u) - c.begin());
      if (j == 0) {
        out.push_back(g.front());
      } else if (j == c.size()) {
        // u above the total mass (off by rounding): the last node carrying mass.
        std::size_t last = c.size() - 1;
        while (last > 0 && c[last - 1] == c.back()) --last;
        out.push_back(g[last]);
      } else {
        const double w = (u - c[j - 1]) / (c[j] - c[j - 1]);
        out.push_back(g[j - 1] + w * (g[j] - g[j - 1]));
      }
    }
    return out;
  }

 private:
  double segment_mass(double a, double b) const {
    using GL = boost::math::quadrature::gauss<double, 15>;
    return GL::integrate([&](double y) { return density(y); }, a, b);
  }

  void build_table() {
    table_.grid = detail::table_grid();
    const auto& g = table_.grid;
    table_.pdf.resize(g.size());
    table_.cdf.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) table_.pdf[i] = density(g[i]);
    table_.cdf[0] = 0.0;
    for (std::size_t i = 1; i < g.size(); ++i) {
      const bool empty = table_.pdf[i - 1] == 0.0 && table_.pdf[i] == 0.0 &&
                         std::min(std::abs(g[i - 1]), std::abs(g[i])) >= support_;
      table_.cdf[i] = table_.cdf[i - 1] + (empty ? 0.0 : segment_mass(g[i - 1], g[i]));
    }
  }

  double sigma_;
  EvalAccuracy acc_;
  double xi_sigma_ = 0.0;
  double xi_sigma_theta_ = 0.0;
  double support_ = 0.0;
  DensityTable table_;
};

}  // namespace xidist
