#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace xidist {

/// Formats with 15 significant digits. Integral values keep a trailing ".0"
/// so the output always reads as a real number ("1.0", "0.0", "-2.5").
inline std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  std::string out(buf);
  if (std::isfinite(value) && out.find_first_of(".eE") == std::string::npos) out += ".0";
  return out;
}

}  // namespace xidist
