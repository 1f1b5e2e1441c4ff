#pragma once

#include <span>
#include <vector>

namespace phlab {

/// Row i reads lower[i-1] x[i-1] + diagonal[i] x[i] + upper[i] x[i+1] = rhs[i].
struct TridiagonalSystem {
  std::vector<double> lower;     // n - 1
  std::vector<double> diagonal;  // n
  std::vector<double> upper;     // n - 1
  std::vector<double> rhs;       // n

  explicit TridiagonalSystem(std::size_t n = 0)
      : lower(n > 0 ? n - 1 : 0), diagonal(n), upper(n > 0 ? n - 1 : 0), rhs(n) {}

  std::size_t size() const noexcept { return diagonal.size(); }
};

inline constexpr double default_pivot_floor = 1e-14;

/// Thomas algorithm without pivoting. Throws singular-pivot (with the row)
/// when an elimination pivot falls below `pivot_floor` in magnitude.
std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys,
                                      double pivot_floor = default_pivot_floor);

/// sys * x, ignoring sys.rhs.
std::vector<double> multiply(const TridiagonalSystem& sys, std::span<const double> x);

}  // namespace phlab
