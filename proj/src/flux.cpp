#include "bufferlane/flux.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bufferlane/error.hpp"

namespace bufferlane::flux {

namespace {
constexpr double kRoundOff = 1e-12;
}

double checked_density(double rho) {
  if (!(rho >= -kRoundOff && rho <= kRhoMax + kRoundOff)) {
    throw Error(ErrorKind::DensityOutOfRange, "density " + std::to_string(rho) + " outside [0, 1]");
  }
  return std::clamp(rho, 0.0, kRhoMax);
}

double flux(double rho) {
  rho = checked_density(rho);
  return rho * (1.0 - rho);
}

double velocity(double rho) { return 1.0 - checked_density(rho); }

double flux_derivative(double rho) { return 1.0 - 2.0 * checked_density(rho); }

double demand(double rho) {
  rho = checked_density(rho);
  return rho <= kSigma ? rho * (1.0 - rho) : kCapacity;
}

double supply(double rho) {
  rho = checked_density(rho);
  return rho <= kSigma ? kCapacity : rho * (1.0 - rho);
}

double godunov_flux(double left, double right) { return std::min(demand(left), supply(right)); }

double free_flow_density(double q) {
  if (!(q >= 0.0 && q <= kCapacity)) {
    throw Error(ErrorKind::InvalidParameter, "flow " + std::to_string(q) + " outside [0, 0.25]");
  }
  return 0.5 * (1.0 - std::sqrt(1.0 - 4.0 * q));
}

double congested_density(double q) {
  if (!(q >= 0.0 && q <= kCapacity)) {
    throw Error(ErrorKind::InvalidParameter, "flow " + std::to_string(q) + " outside [0, 0.25]");
  }
  return 0.5 * (1.0 + std::sqrt(1.0 - 4.0 * q));
}

}  // namespace bufferlane::flux
