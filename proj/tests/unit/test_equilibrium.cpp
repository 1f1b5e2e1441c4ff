#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "phlab/equilibrium.hpp"
#include "phlab/numerics.hpp"
#include "phlab/solver_vm.hpp"
#include "phlab/transforms.hpp"

using namespace phlab;
using test::error_kind;
using test::sample;

TEST_SUITE("equilibrium") {

TEST_CASE("hartmann velocity") {
  CHECK(hartmann_u(0.0) == 0.0);
  CHECK(hartmann_u(std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-15));
  const Grid1D g = make_graded_grid(6.0, 601, 1.0);
  const auto d = fd_first(g, sample(g, hartmann_u));
  double m = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) m = std::max(m, std::abs(d[j] - hartmann_u_y(g[j])));
  CHECK(m < 1e-4);
  CHECK(error_kind([] { hartmann_u(-1.0); }) == ErrorKind::negative_argument);
}

TEST_CASE("reduced momentum balance holds pointwise") {
  for (double y : {0.0, 0.1, 1.0, 3.0, 10.0}) {
    CHECK(std::abs(-hartmann_u_yy(y) + hartmann_u(y) - 1.0) <= 1e-12);
  }
  const Grid1D g = make_graded_grid(8.0, 801, 1.0);
  const auto d2 = fd_second(g, sample(g, hartmann_u));
  double m = 0.0;
  for (std::size_t j = 1; j + 1 < g.size(); ++j) m = std::max(m, std::abs(-d2[j] + hartmann_u(g[j]) - 1.0));
  CHECK(m < 1e-4);
}

TEST_CASE("hartmann stream function") {
  CHECK(hartmann_psi_of_y(0.0) == 0.0);
  CHECK(hartmann_psi_of_y(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(std::abs(hartmann_psi_of_y(1e-3) - 5e-7) <= 2e-10);
  // y^2/2 - y^3/6 + y^4/24 at y = 1e-3
  CHECK(hartmann_psi_of_y(1e-3) ==
        doctest::Approx(5e-7 - 1e-9 / 6 + 1e-12 / 24).epsilon(1e-14));
  for (int i = 1; i < 200; ++i) CHECK(hartmann_psi_of_y(0.05 * i) > hartmann_psi_of_y(0.05 * (i - 1)));
  CHECK(error_kind([] { hartmann_psi_of_y(-0.1); }) == ErrorKind::negative_argument);
}

TEST_CASE("hartmann inverse stream function") {
  CHECK(hartmann_y_of_psi(0.0) == 0.0);
  CHECK(std::abs(hartmann_y_of_psi(0.3678794412) - 1.0) <= 1e-8);
  for (double y : {0.1, 1.0, 5.0}) {
    const double psi = hartmann_psi_of_y(y);
    const double back = hartmann_y_of_psi(psi, 1e-14);
    CHECK(std::abs(hartmann_psi_of_y(back) - psi) <= 1e-14);
    CHECK(back == doctest::Approx(y).epsilon(1e-10));
  }
  CHECK(error_kind([] { hartmann_y_of_psi(-1.0); }) == ErrorKind::negative_argument);
}

TEST_CASE("hartmann velocity as a function of psi") {
  CHECK(hartmann_u_of_psi(0.0) == 0.0);
  const double small = hartmann_u_of_psi(1e-6);
  CHECK(std::abs(small - std::sqrt(2e-6)) <= 1e-6);
  CHECK(small == doctest::Approx(std::sqrt(2e-6)).epsilon(1e-3));
  for (double psi : {5.0, 8.0, 20.0}) CHECK(std::abs(hartmann_u_of_psi(psi) - 1.0) <= std::exp(-5.0));
}

TEST_CASE("hartmann magnetic component") {
  CHECK(hartmann_b(0.0) == 0.0);
  CHECK(std::abs(hartmann_b(30.0) - 1.0) <= 1e-13);
  for (double y : {0.0, 0.3, 2.0, 9.0}) CHECK(hartmann_b_y(y) + hartmann_u(y) == 1.0);
  CHECK(error_kind([] { hartmann_b(-2.0); }) == ErrorKind::negative_argument);
}

TEST_CASE("equilibrium sampled on a psi grid") {
  const Grid1D g = make_graded_grid(hartmann_psi_of_y(15.0), 401, 2.0);
  const auto eq = equilibrium_on_psi_grid(g);
  REQUIRE(eq.w.size() == g.size());
  CHECK(eq.w[0] == 0.0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    CHECK(hartmann_psi_of_y(eq.y[j]) == doctest::Approx(g[j]).epsilon(1e-12));
    CHECK(eq.w[j] == doctest::Approx(eq.u[j] * eq.u[j]).epsilon(1e-15));
  }
}

TEST_CASE("steady von-Mises residual vanishes under refinement away from the wall") {
  const double eta0 = 0.25;
  for (double exponent : {1.0, 2.0}) {
    double res[3];
    const std::size_t counts[3] = {501, 1001, 2001};
    for (int k = 0; k < 3; ++k) {
      const Grid1D g = make_graded_grid(hartmann_psi_of_y(15.0), counts[k], exponent);
      const auto eq = equilibrium_on_psi_grid(g);
      const auto r = steady_residual(VmState{0.0, g, eq.w, 1.0});
      double m = 0.0;
      for (std::size_t j = 0; j < g.size(); ++j)
        if (g[j] >= eta0) m = std::max(m, std::abs(r[j]));
      res[k] = m;
    }
    CHECK(std::log2(res[0] / res[1]) >= 1.8);
    CHECK(std::log2(res[1] / res[2]) >= 1.8);
  }
}

TEST_CASE("steady residual at the first node stays order one") {
  // w_bar ~ 2 psi - c psi^{3/2} is not resolved by three points next to the wall
  for (std::size_t n : {501, 2001}) {
    const Grid1D g = make_graded_grid(hartmann_psi_of_y(15.0), n, 2.0);
    const auto r = steady_residual(VmState{0.0, g, equilibrium_on_psi_grid(g).w, 1.0});
    CHECK(std::abs(r[1]) == doctest::Approx(0.22).epsilon(0.05));
  }
}

}
