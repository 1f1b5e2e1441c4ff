#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace phlab {

enum class ErrorKind {
  invalid_parameter,
  length_mismatch,
  non_finite_input,
  singular_pivot,
  out_of_range,
  no_sign_change,
  max_iterations,
  nonpositive_sample,
  degenerate_xs,
  negative_argument,
  nonpositive_u,
  nonpositive_w,
  nonpositive_input,
  target_out_of_range,
  missing_station,
  grid_mismatch,
  picard_divergence,
  negativity,
  sqrt_domain,
  positivity_loss,
  ladder_nonconvergence,
  invalid_delta0,
  nonzero_wall_value,
  insufficient_stations,
  derivative_unavailable,
  order_request,
  lambda_critical,
  non_decaying,
  io_error,
  config_parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library-wide exception. Carries a machine-readable kind, plus the
/// offending row (tridiagonal pivots, config lines) and the marching
/// station when one is known.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  Error(ErrorKind kind, const std::string& message, std::size_t row);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> row() const noexcept { return row_; }
  std::optional<double> station() const noexcept { return station_; }

  /// Copy of this error annotated with the station x at which it happened.
  Error at_station(double x) const;

 private:
  ErrorKind kind_;
  std::optional<std::size_t> row_;
  std::optional<double> station_;
  std::string detail_;
};

}  // namespace phlab
