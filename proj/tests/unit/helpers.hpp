#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "phlab/error.hpp"
#include "phlab/numerics/grid.hpp"

namespace test {

inline std::vector<double> sample(const phlab::Grid1D& g, const std::function<double(double)>& f) {
  std::vector<double> out(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) out[j] = f(g[j]);
  return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

template <class F>
phlab::ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const phlab::Error& e) {
    return e.kind();
  }
  return static_cast<phlab::ErrorKind>(-1);
}

}  // namespace test
