#pragma once

#include <functional>

namespace phlab {

using ScalarFn = std::function<double(double)>;

struct Bracket {
  double lo;
  double hi;
};

inline constexpr int default_root_max_iterations = 100;

/// Safeguarded Newton: a Newton step is taken when it stays inside the
/// current sign-change bracket and shrinks the residual, otherwise the step
/// bisects. Stops when |f(root)| <= tol or the bracket has collapsed to
/// adjacent doubles. `start` seeds the iteration (NaN picks the midpoint).
double find_root_bisect_newton(const ScalarFn& f, const ScalarFn& df, Bracket bracket, double tol,
                               double start, int max_iterations = default_root_max_iterations);

double find_root_bisect_newton(const ScalarFn& f, const ScalarFn& df, Bracket bracket, double tol);

/// Derivative-free variant; the Newton slope is the secant through the
/// latest two iterates.
double find_root_bisect_newton(const ScalarFn& f, Bracket bracket, double tol);

}  // namespace phlab
