#include "phlab/numerics/tridiagonal.hpp"

#include <cmath>
#include <string>

#include "phlab/error.hpp"

namespace phlab {
namespace {

void check_shape(const TridiagonalSystem& sys) {
  const std::size_t n = sys.diagonal.size();
  if (n == 0) throw Error(ErrorKind::invalid_parameter, "empty tridiagonal system");
  if (sys.lower.size() != n - 1 || sys.upper.size() != n - 1 || sys.rhs.size() != n) {
    throw Error(ErrorKind::length_mismatch, "inconsistent tridiagonal band lengths");
  }
}

}  // namespace

std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys, double pivot_floor) {
  check_shape(sys);
  const std::size_t n = sys.size();
  std::vector<double> c(n, 0.0);
  std::vector<double> d(n, 0.0);

  double pivot = sys.diagonal[0];
  if (!(std::abs(pivot) > pivot_floor)) {
    throw Error(ErrorKind::singular_pivot, "pivot below floor", 0);
  }
  if (n > 1) c[0] = sys.upper[0] / pivot;
  d[0] = sys.rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = sys.diagonal[i] - sys.lower[i - 1] * c[i - 1];
    if (!(std::abs(pivot) > pivot_floor)) {
      throw Error(ErrorKind::singular_pivot, "pivot below floor", i);
    }
    if (i + 1 < n) c[i] = sys.upper[i] / pivot;
    d[i] = (sys.rhs[i] - sys.lower[i - 1] * d[i - 1]) / pivot;
  }

  std::vector<double> x(n);
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

std::vector<double> multiply(const TridiagonalSystem& sys, std::span<const double> x) {
  check_shape(sys);
  const std::size_t n = sys.size();
  if (x.size() != n) throw Error(ErrorKind::length_mismatch, "vector length mismatch");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = sys.diagonal[i] * x[i];
    if (i > 0) s += sys.lower[i - 1] * x[i - 1];
    if (i + 1 < n) s += sys.upper[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

}  // namespace phlab
