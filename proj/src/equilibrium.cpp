#include "phlab/equilibrium.hpp"

#include <cmath>

#include "phlab/error.hpp"
#include "phlab/numerics/roots.hpp"

namespace phlab {
namespace {

void require_nonnegative(double y, const char* what) {
  if (!(y >= 0.0)) {
    throw Error(ErrorKind::negative_argument, std::string(what) + " requires a nonnegative argument");
  }
}

}  // namespace

double hartmann_u(double y) {
  require_nonnegative(y, "hartmann_u");
  return -std::expm1(-y);
}

double hartmann_u_y(double y) {
  require_nonnegative(y, "hartmann_u_y");
  return std::exp(-y);
}

double hartmann_u_yy(double y) {
  require_nonnegative(y, "hartmann_u_yy");
  return -std::exp(-y);
}

double hartmann_psi_of_y(double y) {
  require_nonnegative(y, "hartmann_psi_of_y");
  if (y < 0.1) {
    // y^2/2 - y^3/6 + y^4/24 - ... , alternating, summed from the small end.
    double term = y * y / 2.0;
    double sum = 0.0;
    double terms[16];
    int n = 0;
    for (int k = 2; k < 18 && n < 16; ++k) {
      terms[n++] = term;
      term *= -y / static_cast<double>(k + 1);
    }
    for (int i = n - 1; i >= 0; --i) sum += terms[i];
    return sum;
  }
  return y + std::expm1(-y);
}

double hartmann_y_of_psi(double psi, double tol) {
  require_nonnegative(psi, "hartmann_y_of_psi");
  if (psi == 0.0) return 0.0;
  const double start = psi < 0.5 ? std::sqrt(2.0 * psi) : psi + 1.0;
  auto f = [psi](double y) { return hartmann_psi_of_y(y) - psi; };
  auto df = [](double y) { return hartmann_u(y); };
  // psi(y) >= y - 1 bounds the root by psi + 1; psi(y) <= y^2/2 bounds it below.
  const double lo = std::min(std::sqrt(2.0 * psi), psi) * 0.5;
  return find_root_bisect_newton(f, df, Bracket{lo, psi + 2.0}, tol, start);
}

double hartmann_u_of_psi(double psi) {
  return hartmann_u(hartmann_y_of_psi(psi));
}

double hartmann_b(double y) {
  require_nonnegative(y, "hartmann_b");
  return -std::expm1(-y);
}

double hartmann_b_y(double y) {
  require_nonnegative(y, "hartmann_b_y");
  return 1.0 - hartmann_u(y);
}

EquilibriumOnGrid equilibrium_on_psi_grid(const Grid1D& grid_psi) {
  EquilibriumOnGrid eq;
  const std::size_t n = grid_psi.size();
  eq.y.resize(n);
  eq.u.resize(n);
  eq.w.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double psi = grid_psi[j];
    const double y = hartmann_y_of_psi(psi, std::max(1e-15 * psi, 1e-300));
    eq.y[j] = y;
    eq.u[j] = hartmann_u(y);
    eq.w[j] = eq.u[j] * eq.u[j];
  }
  return eq;
}

}  // namespace phlab
