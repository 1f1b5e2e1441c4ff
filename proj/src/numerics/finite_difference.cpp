#include "phlab/numerics/finite_difference.hpp"

#include <algorithm>
#include <string>

#include "phlab/error.hpp"

namespace phlab {
namespace {

void check_length(const Grid1D& grid, std::span<const double> values) {
  if (values.size() != grid.size()) {
    throw Error(ErrorKind::length_mismatch, "values length " + std::to_string(values.size()) +
                                                " does not match grid count " +
                                                std::to_string(grid.size()));
  }
}

double apply_one_sided(std::span<const double> x, std::span<const double> f, std::size_t at,
                       std::size_t first, std::size_t count, int order) {
  const auto w = fornberg_weights(x[at], x.subspan(first, count), order);
  double sum = 0.0;
  for (std::size_t i = 0; i < count; ++i) sum += w[i] * f[first + i];
  return sum;
}

}  // namespace

std::vector<double> fornberg_weights(double at, std::span<const double> nodes, int order) {
  const std::size_t n = nodes.size();
  if (order < 0 || n <= static_cast<std::size_t>(order)) {
    throw Error(ErrorKind::invalid_parameter, "stencil needs more nodes than derivative order");
  }
  const std::size_t m = static_cast<std::size_t>(order);
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - at;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - at;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

std::vector<double> fd_first(const Grid1D& grid, std::span<const double> f) {
  check_length(grid, f);
  const auto x = grid.nodes();
  const std::size_t n = x.size();
  std::vector<double> d(n);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double hm = x[j] - x[j - 1];
    const double hp = x[j + 1] - x[j];
    d[j] = -hp / (hm * (hm + hp)) * f[j - 1] + (hp - hm) / (hm * hp) * f[j] +
           hm / (hp * (hm + hp)) * f[j + 1];
  }
  d[0] = apply_one_sided(x, f, 0, 0, 3, 1);
  d[n - 1] = apply_one_sided(x, f, n - 1, n - 3, 3, 1);
  return d;
}

std::vector<double> fd_second(const Grid1D& grid, std::span<const double> f) {
  check_length(grid, f);
  const auto x = grid.nodes();
  const std::size_t n = x.size();
  std::vector<double> d(n);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double hm = x[j] - x[j - 1];
    const double hp = x[j + 1] - x[j];
    d[j] = 2.0 * (hm * f[j + 1] - (hm + hp) * f[j] + hp * f[j - 1]) / (hm * hp * (hm + hp));
  }
  d[0] = apply_one_sided(x, f, 0, 0, 4, 2);
  d[n - 1] = apply_one_sided(x, f, n - 1, n - 4, 4, 2);
  return d;
}

}  // namespace phlab
