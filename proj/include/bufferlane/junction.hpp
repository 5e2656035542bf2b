#pragma once

#include <array>

#include "bufferlane/network.hpp"

namespace bufferlane {

/// Buffer demand rule at merging junctions. Standard never drains an empty
/// buffer below zero; Original is the earlier rule, kept for comparison.
enum class DemandMode { Standard, Original };

/// Boundary fluxes at one junction for one time step.
///
/// `out[k]` is q^out of the k-th incoming road (flow leaving the road into the
/// buffer), `in[k]` is q^in of the k-th outgoing road. Unused slots stay 0.
struct JunctionFluxes {
  std::array<double, 2> out{};
  std::array<double, 2> in{};
  double external_inflow = 0.0;  // f_in at sources
  double buffer_demand = 0.0;
  double buffer_supply = 0.0;

  double total_inflow() const { return out[0] + out[1] + external_inflow; }
  double total_outflow() const { return in[0] + in[1]; }
  double buffer_rate() const { return total_inflow() - total_outflow(); }
};

/// Densities seen by a junction: the last cell of each incoming road and the
/// first cell of each outgoing road, in declaration order.
struct JunctionInputs {
  std::array<double, 2> incoming_end{};
  std::array<double, 2> outgoing_start{};
};

/// Loads within this distance of 0 (or of r_max) count as empty (or full).
inline constexpr double kBufferTolerance = 1e-13;

/// Demand-proportional right-of-way shares; (0.5, 0.5) when both demands vanish.
std::array<double, 2> dynamic_priorities(double d1, double d2);

JunctionFluxes one_to_two_fluxes(double rho1_end, double rho2_start, double rho3_start, double r,
                                 const JunctionSpec& spec);
JunctionFluxes two_to_one_fluxes(double rho1_end, double rho2_end, double rho3_start, double r,
                                 const JunctionSpec& spec, DemandMode mode = DemandMode::Standard);
JunctionFluxes one_to_one_fluxes(double rho1_end, double rho2_start, double r, const JunctionSpec& spec);
JunctionFluxes source_fluxes(double inflow, double rho_first, double r, double mu);
JunctionFluxes sink_flux(double rho_last);

/// Dispatches on the junction kind with the buffer state given directly as
/// empty/full flags instead of a load.
JunctionFluxes evaluate_junction(const JunctionSpec& spec, const JunctionInputs& inputs, bool empty, bool full,
                                 DemandMode mode, double inflow);

/// Fluxes for one explicit step of length tau starting at load r.
///
/// When the fluxes of the current regime would carry the buffer past 0 or
/// r_max before the step ends, the step is split at the crossing time and the
/// returned fluxes are the time average of the two regimes, so the load lands
/// exactly on the bound. Original-mode merges skip this in the empty regime so
/// that their negative loads stay observable.
JunctionFluxes step_fluxes(const JunctionSpec& spec, const JunctionInputs& inputs, double r, double tau,
                           DemandMode mode, double inflow);

struct BufferUpdate {
  double load = 0.0;
  bool negative = false;  // only ever set in Original mode
};

/// Explicit Euler update r + tau * (inflow - outflow). Round-off excursions up
/// to 1e-12 are clamped. Larger ones throw BufferUnderflow/BufferOverflow in
/// Standard mode; in Original mode a negative load is returned and flagged.
BufferUpdate buffer_step(double r, double inflow, double outflow, double tau, double r_max,
                         DemandMode mode = DemandMode::Standard);

}  // namespace bufferlane
