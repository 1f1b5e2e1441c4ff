#include "phlab/numerics/roots.hpp"

#include <cmath>
#include <limits>

#include "phlab/error.hpp"

namespace phlab {
namespace {

bool collapsed(double a, double b) {
  return std::nextafter(a, b) == b || a == b;
}

template <class Slope>
double solve(const ScalarFn& f, Slope slope, Bracket br, double tol, double start,
             int max_iterations) {
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_parameter, "root tolerance must be positive");
  double lo = br.lo;
  double hi = br.hi;
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo);
  double fhi = f(hi);
  if (std::abs(flo) <= tol) return lo;
  if (std::abs(fhi) <= tol) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw Error(ErrorKind::no_sign_change, "function has the same sign at both bracket ends");
  }

  double x = std::isnan(start) || start <= lo || start >= hi ? 0.5 * (lo + hi) : start;
  double fx = f(x);
  double x_prev = std::numeric_limits<double>::quiet_NaN();
  double f_prev = std::numeric_limits<double>::quiet_NaN();
  double last_abs = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iterations; ++it) {
    if (std::abs(fx) <= tol) return x;
    if (std::signbit(fx) == std::signbit(flo)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    if (collapsed(lo, hi)) return std::abs(flo) < std::abs(fhi) ? lo : hi;

    // Newton only while the previous step at least halved the residual.
    double next = std::numeric_limits<double>::quiet_NaN();
    if (std::abs(fx) <= 0.5 * last_abs) {
      const double d = slope(x, fx, x_prev, f_prev);
      if (std::isfinite(d) && d != 0.0) next = x - fx / d;
    }
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    last_abs = std::abs(fx);
    x_prev = x;
    f_prev = fx;
    x = next;
    fx = f(x);
  }
  if (std::abs(fx) <= tol) return x;
  throw Error(ErrorKind::max_iterations, "root finder exhausted its iteration budget");
}

}  // namespace

double find_root_bisect_newton(const ScalarFn& f, const ScalarFn& df, Bracket bracket, double tol,
                               double start, int max_iterations) {
  auto slope = [&df](double x, double, double, double) { return df(x); };
  return solve(f, slope, bracket, tol, start, max_iterations);
}

double find_root_bisect_newton(const ScalarFn& f, const ScalarFn& df, Bracket bracket, double tol) {
  return find_root_bisect_newton(f, df, bracket, tol, std::numeric_limits<double>::quiet_NaN());
}

double find_root_bisect_newton(const ScalarFn& f, Bracket bracket, double tol) {
  auto secant = [](double x, double fx, double xp, double fp) {
    if (std::isnan(xp) || xp == x) return std::numeric_limits<double>::quiet_NaN();
    return (fx - fp) / (x - xp);
  };
  return solve(f, secant, bracket, tol, std::numeric_limits<double>::quiet_NaN(),
               default_root_max_iterations);
}

}  // namespace phlab
