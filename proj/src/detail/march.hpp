#pragma once

#include <cmath>
#include <cstddef>

#include "phlab/error.hpp"
#include "phlab/solver_vm.hpp"

namespace phlab::detail {

inline std::size_t step_count(double x0, double x_end, double dx, double* last_dx) {
  const double ratio = (x_end - x0) / dx;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 && nearest >= 1.0) {
    *last_dx = dx;
    return static_cast<std::size_t>(nearest);
  }
  const auto n = static_cast<std::size_t>(std::ceil(ratio));
  *last_dx = x_end - (x0 + static_cast<double>(n - 1) * dx);
  return n;
}

/// step(state, dx) -> state. Station values are x0 + k dx (x_end for the last).
template <class State, class Step>
MarchResult<State> march_loop(const State& initial, double x_end, double dx,
                              const StationObserver<State>& observer, Step&& step) {
  if (!(dx > 0.0) || !std::isfinite(dx)) throw Error(ErrorKind::invalid_parameter, "dx must be positive");
  if (!(x_end > initial.x)) throw Error(ErrorKind::invalid_parameter, "x_end must exceed the initial station");
  double last_dx = dx;
  const std::size_t n = step_count(initial.x, x_end, dx, &last_dx);
  MarchResult<State> result{initial, {}};
  result.history.reserve(n + 1);
  result.history.push_back(initial);
  State current = initial;
  for (std::size_t k = 0; k < n; ++k) {
    try {
      current = step(current, (k + 1 == n) ? last_dx : dx);
    } catch (const Error& e) {
      throw e.at_station(current.x);
    }
    current.x = (k + 1 == n) ? x_end : initial.x + static_cast<double>(k + 1) * dx;
    if (observer) observer(current);
    result.history.push_back(current);
  }
  result.final_state = current;
  return result;
}

}  // namespace phlab::detail
