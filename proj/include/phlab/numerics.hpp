#pragma once

#include "phlab/numerics/finite_difference.hpp"
#include "phlab/numerics/fit.hpp"
#include "phlab/numerics/grid.hpp"
#include "phlab/numerics/interpolation.hpp"
#include "phlab/numerics/quadrature.hpp"
#include "phlab/numerics/roots.hpp"
#include "phlab/numerics/tridiagonal.hpp"
