#pragma once

#include "xidist/accuracy.hpp"
#include "xidist/distribution.hpp"
#include "xidist/errors.hpp"
#include "xidist/format.hpp"
#include "xidist/harness.hpp"
#include "xidist/levy.hpp"
#include "xidist/quadrature.hpp"
#include "xidist/specfun.hpp"
#include "xidist/zeros.hpp"
