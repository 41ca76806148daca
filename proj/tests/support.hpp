#pragma once

#include <cmath>
#include <complex>

#include "xidist/zeros.hpp"

namespace xidist_test {

// Built once per ctest run by the zero_cache fixture (t_max = 9880, 10003 zeros).
inline const xidist::ZeroList& shared_zeros() {
  static const xidist::ZeroList zl = xidist::load_cache(XIDIST_TEST_CACHE);
  return zl;
}

inline double rel_err(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::abs(want);
}

}  // namespace xidist_test
