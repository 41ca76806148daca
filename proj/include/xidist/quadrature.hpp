#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <type_traits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "xidist/errors.hpp"

namespace xidist::quad {

template <typename Value>
struct Result {
  Value value{};
  double error = 0.0;  // Kronrod error estimate
  double l1 = 0.0;     // integral of |f|
};

struct Options {
  // Relative to the L1 norm of each panel. Boost's |K15 - G7| estimate
  // inflates once recursion is pushed below roundoff, so keep this >= 1e-12.
  double rel_tol = 1e-12;
  unsigned max_depth = 12;
  double max_panel_width = 1.0;  // split [a, b] into panels no wider than this
};

namespace detail {

template <typename F>
using value_of = std::decay_t<std::invoke_result_t<F, double>>;

}  // namespace detail

/// Adaptive 7/15-point Gauss-Kronrod on [a, b], split into panels of width
/// at most opts.max_panel_width. Panel results are summed in order, so the
/// value is deterministic.
template <typename F>
Result<detail::value_of<F>> integrate(F&& f, double a, double b, const Options& opts = {}) {
  using Value = detail::value_of<F>;
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  Result<Value> out;
  if (!(a < b)) return out;
  const double width = std::max(opts.max_panel_width, 1e-300);
  const auto panels = static_cast<std::size_t>(std::ceil((b - a) / width));
  const double h = (b - a) / static_cast<double>(std::max<std::size_t>(panels, 1));
  for (std::size_t i = 0; i < std::max<std::size_t>(panels, 1); ++i) {
    const double lo = a + h * static_cast<double>(i);
    const double hi = (i + 1 == panels) ? b : a + h * static_cast<double>(i + 1);
    double err = 0.0;
    double l1 = 0.0;
    Value v = GK::integrate(f, lo, hi, opts.max_depth, opts.rel_tol, &err, &l1);
    out.value += v;
    out.error += err;
    out.l1 += l1;
  }
  if constexpr (std::is_same_v<Value, double>) {
    if (!std::isfinite(out.value)) throw AccuracyError("quadrature produced a non-finite value", out.error);
  } else {
    if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag())) {
      throw AccuracyError("quadrature produced a non-finite value", out.error);
    }
  }
  return out;
}

}  // namespace xidist::quad
