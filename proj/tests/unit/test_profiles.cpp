#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "phlab/equilibrium.hpp"
#include "phlab/numerics.hpp"
#include "phlab/profiles.hpp"
#include "phlab/transforms.hpp"

using namespace phlab;
using test::error_kind;
using test::sample;

TEST_SUITE("profiles") {

TEST_CASE("incomplete gamma against closed forms") {
  for (double y : {0.0, 1e-6, 0.3, 2.0, 15.0, 45.0}) {
    CHECK(lower_incomplete_gamma_int(0, y) == doctest::Approx(-std::expm1(-y)).epsilon(1e-13));
  }
  for (double y : {0.3, 2.0, 15.0, 45.0}) {
    CHECK(lower_incomplete_gamma_int(1, y) == doctest::Approx(1.0 - std::exp(-y) * (1.0 + y)).epsilon(1e-12));
  }
  // y^2/2 - y^3/3 + y^4/8 near zero, where the closed form cancels
  CHECK(lower_incomplete_gamma_int(1, 1e-6) == doctest::Approx(5e-13 - 1e-18 / 3).epsilon(1e-12));
  // gamma(5, y) = 24 - e^{-y}(24 + 24y + 12y^2 + 4y^3 + y^4)
  for (double y : {0.5, 3.0, 12.0, 60.0}) {
    const double closed = 24.0 - std::exp(-y) * (24 + 24 * y + 12 * y * y + 4 * y * y * y + y * y * y * y);
    CHECK(lower_incomplete_gamma_int(4, y) == doctest::Approx(closed).epsilon(1e-12).scale(1e-9));
  }
  CHECK(lower_incomplete_gamma_int(4, 1e-3) == doctest::Approx(std::pow(1e-3, 5) / 5).epsilon(1e-3));
  CHECK(error_kind([] { lower_incomplete_gamma_int(-1, 1.0); }) == ErrorKind::invalid_parameter);
}

TEST_CASE("perturbed profile values and derivatives") {
  const auto p = InitialProfile::perturbed(0.05, 4);
  CHECK(p.name() == "perturbed_quartic");
  CHECK(InitialProfile::perturbed(0.05, 2).name() == "perturbed_quadratic");
  CHECK(p.has_exact_derivatives());
  for (double y : {0.2, 1.0, 4.0}) {
    const double bump = std::pow(y, 4) * std::exp(-y);
    CHECK(p.value(y) == doctest::Approx(1 - std::exp(-y) + 0.05 * bump).epsilon(1e-14));
    // d/dy y^4 e^{-y} = (4y^3 - y^4) e^{-y}
    const double d1 = std::exp(-y) + 0.05 * (4 * y * y * y - y * y * y * y) * std::exp(-y);
    CHECK(*p.exact_derivative(y, 1) == doctest::Approx(d1).epsilon(1e-13));
  }
  // higher derivatives against 6-point central differences of the next lower order
  for (int order = 1; order <= 5; ++order) {
    const double y = 0.7, h = 1e-3;
    const double fd = (*p.exact_derivative(y + h, order - 1) - *p.exact_derivative(y - h, order - 1)) / (2 * h);
    CHECK(*p.exact_derivative(y, order) == doctest::Approx(fd).epsilon(1e-5));
  }
  for (int order = 0; order <= 3; ++order) CHECK(std::abs(*p.exact_derivative(0.0, order) -
                                                            *InitialProfile::hartmann().exact_derivative(0.0, order)) == 0.0);
  CHECK(*p.exact_derivative(0.0, 4) == doctest::Approx(-1.0 + 0.05 * 24).epsilon(1e-14));
}

TEST_CASE("exact stream function matches quadrature") {
  const auto p = InitialProfile::perturbed(0.05, 4);
  const Grid1D g = make_graded_grid(15.0, 3001, 1.0);
  const auto cum = cumulative_trapezoid(g, p.on_grid(g));
  for (std::size_t j = 0; j < g.size(); j += 250) CHECK(std::abs(cum[j] - p.stream_function(g[j])) < 1e-5);
}

TEST_CASE("validation") {
  CHECK_NOTHROW(InitialProfile::hartmann().validate(15.0));
  CHECK_NOTHROW(InitialProfile::perturbed(0.05, 4).validate(15.0));
  CHECK(error_kind([] { InitialProfile::perturbed(-1.0, 4).validate(15.0); }) == ErrorKind::invalid_parameter);
  CHECK(error_kind([] { InitialProfile::perturbed(0.05, 0); }) == ErrorKind::invalid_parameter);
}

TEST_CASE("sampled profile") {
  const Grid1D g = make_graded_grid(15.0, 1501, 1.0);
  const auto p = InitialProfile::sampled(g, sample(g, hartmann_u));
  CHECK(p.is_sampled());
  CHECK_FALSE(p.has_exact_derivatives());
  CHECK_FALSE(p.exact_derivative(0.5, 1).has_value());
  CHECK(p.value(g[10]) == hartmann_u(g[10]));
  CHECK(std::abs(p.value(0.123) - hartmann_u(0.123)) < 1e-6);
  CHECK(std::abs(p.stream_function(3.0) - hartmann_psi_of_y(3.0)) < 1e-6);
  CHECK(error_kind([&] { InitialProfile::sampled(g, std::vector<double>(4)); }) == ErrorKind::length_mismatch);
}

TEST_CASE("von-Mises initial state") {
  const Grid1D gpsi = make_graded_grid(hartmann_psi_of_y(15.0), 2001, 2.0);
  const auto h = vm_initial_state(InitialProfile::hartmann(), gpsi);
  const auto eq = equilibrium_on_psi_grid(gpsi);
  CHECK(h.w.front() == 0.0);
  CHECK(h.w.back() == 1.0);
  for (std::size_t j = 0; j + 1 < gpsi.size(); ++j) CHECK(std::abs(h.w[j] - eq.w[j]) < 1e-13);

  const auto p = InitialProfile::perturbed(0.05, 4);
  const auto vp = vm_initial_state(p, gpsi);
  for (std::size_t j = 1; j + 1 < gpsi.size(); j += 97) {
    double lo = 0.0, hi = 30.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (p.stream_function(mid) < gpsi[j] ? lo : hi) = mid;
    }
    const double u = p.value(0.5 * (lo + hi));
    CHECK(vp.w[j] == doctest::Approx(u * u).epsilon(1e-12));
  }
  const Grid1D gy = make_graded_grid(15.0, 2001, 1.0);
  const auto samples = vm_initial_state(InitialProfile::sampled(gy, p.on_grid(gy)), gpsi);
  CHECK(test::max_abs_diff(samples.w, vp.w) < 1e-5);
}

TEST_CASE("physical initial state") {
  const Grid1D gy = make_graded_grid(15.0, 301, 1.0);
  const auto s = phys_initial_state(InitialProfile::hartmann(), gy, 0.05);
  CHECK(s.u.front() == 0.05);
  CHECK(s.u.back() == 1.05);
  CHECK(s.u[7] == doctest::Approx(hartmann_u(gy[7]) + 0.05).epsilon(1e-15));
  CHECK(s.b.front() == 0.0);
  CHECK(s.eps == 0.05);
  CHECK(error_kind([&] { phys_initial_state(InitialProfile::hartmann(), gy, -0.1); }) ==
        ErrorKind::invalid_parameter);
}

}
