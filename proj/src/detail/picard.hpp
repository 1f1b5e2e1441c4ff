#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "phlab/error.hpp"
#include "phlab/numerics/grid.hpp"

namespace phlab::detail {

enum class PicardOutcome { converged, stagnated, exhausted };

struct PicardResult {
  std::vector<double> solution;
  PicardOutcome outcome = PicardOutcome::exhausted;
  int iterations = 0;
  double last_change = 0.0;
};

/// Fixed-point loop x_{m+1} = iterate(x_m), stopping on max|x_{m+1} - x_m| <= tol.
/// `window` consecutive non-decreasing changes count as stagnation.
template <class Iterate>
PicardResult picard(std::vector<double> start, Iterate&& iterate, double tol, int max_iterations,
                    int window) {
  PicardResult r;
  std::vector<double> current = std::move(start);
  double previous_change = INFINITY;
  int rising = 0;
  for (int m = 1; m <= max_iterations; ++m) {
    std::vector<double> next = iterate(current);
    double change = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) change = std::max(change, std::abs(next[i] - current[i]));
    current = std::move(next);
    r.iterations = m;
    r.last_change = change;
    if (change <= tol) {
      r.outcome = PicardOutcome::converged;
      r.solution = std::move(current);
      return r;
    }
    rising = change >= previous_change ? rising + 1 : 0;
    previous_change = change;
    if (rising >= window) {
      r.outcome = PicardOutcome::stagnated;
      r.solution = std::move(current);
      return r;
    }
  }
  r.outcome = PicardOutcome::exhausted;
  r.solution = std::move(current);
  return r;
}

/// Interior three-point weights of the second derivative on a nonuniform grid:
/// f''(x_i) ~ a_i f_{i-1} + b_i f_i + c_i f_{i+1}. Index i runs 1..n-2 and
/// the arrays are stored at i.
struct SecondDifference {
  std::vector<double> a, b, c;
};

inline SecondDifference second_difference(const Grid1D& grid) {
  const std::size_t n = grid.size();
  SecondDifference d{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hm = grid[i] - grid[i - 1];
    const double hp = grid[i + 1] - grid[i];
    d.a[i] = 2.0 / (hm * (hm + hp));
    d.c[i] = 2.0 / (hp * (hm + hp));
    d.b[i] = -(d.a[i] + d.c[i]);
  }
  return d;
}

/// Interior centered first-derivative weights on a nonuniform grid.
struct FirstDifference {
  std::vector<double> a, b, c;
};

inline FirstDifference first_difference(const Grid1D& grid) {
  const std::size_t n = grid.size();
  FirstDifference d{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hm = grid[i] - grid[i - 1];
    const double hp = grid[i + 1] - grid[i];
    d.a[i] = -hp / (hm * (hm + hp));
    d.c[i] = hm / (hp * (hm + hp));
    d.b[i] = (hp - hm) / (hm * hp);
  }
  return d;
}

/// One backward-Euler step of size dx from `start`. A stagnating Picard loop
/// is retried once as two substeps of dx/2; any further failure raises
/// picard-divergence. `attempt(start, dx)` returns a PicardResult.
template <class Attempt>
std::vector<double> advance(const std::vector<double>& start, double dx, Attempt&& attempt,
                            int* iterations, bool* halved) {
  auto fail = [](const PicardResult& r, const char* how) {
    throw Error(ErrorKind::picard_divergence,
                std::string("Picard iteration ") + how + " after " + std::to_string(r.iterations) +
                    " iterations (last change " + std::to_string(r.last_change) + ")");
  };
  PicardResult r = attempt(start, dx);
  if (iterations) *iterations = r.iterations;
  if (r.outcome == PicardOutcome::converged) return std::move(r.solution);
  if (r.outcome == PicardOutcome::exhausted) fail(r, "hit the iteration limit");
  if (halved) *halved = true;
  PicardResult h1 = attempt(start, 0.5 * dx);
  if (h1.outcome != PicardOutcome::converged) fail(h1, "stagnated on the halved step");
  PicardResult h2 = attempt(h1.solution, 0.5 * dx);
  if (h2.outcome != PicardOutcome::converged) fail(h2, "stagnated on the halved step");
  if (iterations) *iterations += h1.iterations + h2.iterations;
  return std::move(h2.solution);
}

}  // namespace phlab::detail
