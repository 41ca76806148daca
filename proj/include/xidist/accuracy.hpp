#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "xidist/errors.hpp"

namespace xidist {

/// Truncation control shared by every series and quadrature in the library.
struct EvalAccuracy {
  double abs_tol = 1e-14;
  double rel_tol = 1e-14;
  std::size_t max_terms = 4000;

  /// Throws DomainError unless at least one tolerance is strictly positive.
  void validate() const {
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || max_terms == 0 ||
        (abs_tol == 0.0 && rel_tol == 0.0)) {
      throw DomainError("EvalAccuracy: need abs_tol, rel_tol >= 0 (one > 0) and max_terms > 0");
    }
  }

  /// Absolute error target for a quantity of the given magnitude.
  double target(double magnitude) const {
    return std::max(abs_tol, rel_tol * std::abs(magnitude));
  }
};

}  // namespace xidist
