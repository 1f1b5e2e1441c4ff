#include "phlab/error.hpp"

#include <cstdio>

namespace phlab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::length_mismatch: return "length-mismatch";
    case ErrorKind::non_finite_input: return "non-finite-input";
    case ErrorKind::singular_pivot: return "singular-pivot";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::no_sign_change: return "no-sign-change";
    case ErrorKind::max_iterations: return "max-iterations";
    case ErrorKind::nonpositive_sample: return "nonpositive-sample";
    case ErrorKind::degenerate_xs: return "degenerate-xs";
    case ErrorKind::negative_argument: return "negative-argument";
    case ErrorKind::nonpositive_u: return "nonpositive-u";
    case ErrorKind::nonpositive_w: return "nonpositive-w";
    case ErrorKind::nonpositive_input: return "nonpositive-input";
    case ErrorKind::target_out_of_range: return "target-out-of-range";
    case ErrorKind::missing_station: return "missing-station";
    case ErrorKind::grid_mismatch: return "grid-mismatch";
    case ErrorKind::picard_divergence: return "picard-divergence";
    case ErrorKind::negativity: return "negativity";
    case ErrorKind::sqrt_domain: return "sqrt-domain";
    case ErrorKind::positivity_loss: return "positivity-loss";
    case ErrorKind::ladder_nonconvergence: return "ladder-nonconvergence";
    case ErrorKind::invalid_delta0: return "invalid-delta0";
    case ErrorKind::nonzero_wall_value: return "nonzero-wall-value";
    case ErrorKind::insufficient_stations: return "insufficient-stations";
    case ErrorKind::derivative_unavailable: return "derivative-unavailable";
    case ErrorKind::order_request: return "order-3-requested-without-orders-0-2";
    case ErrorKind::lambda_critical: return "lambda-on-critical-line";
    case ErrorKind::non_decaying: return "non-decaying-f";
    case ErrorKind::io_error: return "io-error";
    case ErrorKind::config_parse: return "config-parse";
  }
  return "unknown";
}

namespace {

std::string compose(ErrorKind kind, const std::string& message) {
  std::string out(to_string(kind));
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(compose(kind, message)), kind_(kind), detail_(message) {}

Error::Error(ErrorKind kind, const std::string& message, std::size_t row)
    : std::runtime_error(compose(kind, message + " (row " + std::to_string(row) + ")")),
      kind_(kind),
      row_(row),
      detail_(message + " (row " + std::to_string(row) + ")") {}

Error Error::at_station(double x) const {
  char buf[64];
  std::snprintf(buf, sizeof buf, " [at station x=%.10g]", x);
  Error annotated(kind_, detail_ + buf);
  annotated.row_ = row_;
  annotated.station_ = x;
  return annotated;
}

}  // namespace phlab
