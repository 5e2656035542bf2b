#pragma once

// Fundamental diagram of the LWR model with f(rho) = rho * (1 - rho).
// Every other module goes through these functions, so a different concave
// law only has to be swapped in here (the complex tracker's closed forms are
// the exception, see tracker.hpp).

namespace bufferlane::flux {

inline constexpr double kSigma = 0.5;      // argmax of f
inline constexpr double kCapacity = 0.25;  // f(sigma)
inline constexpr double kRhoMax = 1.0;
inline constexpr double kMaxWaveSpeed = 1.0;  // max |f'| on [0, 1]

/// Clamps round-off excursions (<= 1e-12) back into [0, 1]; throws
/// DensityOutOfRange for anything larger.
double checked_density(double rho);

double flux(double rho);
double velocity(double rho);
double flux_derivative(double rho);

/// Largest flux a road end at density rho can send.
double demand(double rho);
/// Largest flux a road start at density rho can absorb.
double supply(double rho);

/// Godunov interface flux min{d(u), s(v)}.
double godunov_flux(double left, double right);

/// Density on the free-flow (rho <= sigma) or congested branch carrying flow q.
double free_flow_density(double q);
double congested_density(double q);

}  // namespace bufferlane::flux
