#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bufferlane/junction.hpp"
#include "bufferlane/network.hpp"

namespace bufferlane {

/// Uniform time grid t^n = n * tau, n = 0..steps, with steps * tau = horizon.
struct TimeGrid {
  double tau = 0.0;
  std::size_t steps = 0;
  double horizon = 0.0;

  double time(std::size_t n) const { return static_cast<double>(n) * tau; }
};

/// CFL bound tau = min_e h_e / (2 max|f'|).
double cfl_timestep(const RoadNetwork& network);

/// Largest tau <= bound that divides the horizon into a whole number of steps.
TimeGrid fit_time_grid(double tau_bound, double horizon);

/// One piece of a piecewise-constant initial density; holds from `start` to
/// the next piece's start (or the road end).
struct DensityPiece {
  double start = 0.0;
  double value = 0.0;
  bool operator==(const DensityPiece&) const = default;
};

/// Cell averages of a piecewise-constant profile by exact integration.
std::vector<double> project_density(const Edge& edge, std::span<const DensityPiece> pieces);

struct SimState {
  std::size_t step = 0;
  std::vector<std::vector<double>> density;  // per edge, per cell
  std::vector<double> buffer;                // per node; sinks stay 0
};

/// Total cars on roads plus in non-sink buffers.
double total_mass(const RoadNetwork& network, const SimState& state);

/// Fluxes used for one step, per node in node order.
struct StepFluxes {
  std::vector<JunctionFluxes> junction;
};

struct NegativityEvent {
  std::size_t step = 0;  // load became negative at t^{step}
  NodeIndex node = 0;
  double load = 0.0;
};

/// Advances the state by one step: junction fluxes from the state at t^n,
/// Godunov updates on every road, then the buffer updates.
StepFluxes advance_step(const RoadNetwork& network, SimState& state, double tau, double time,
                        DemandMode mode = DemandMode::Standard,
                        std::vector<NegativityEvent>* negativity = nullptr);

/// Complete history of a run. Densities and loads are stored for n = 0..M,
/// fluxes for the M steps between them.
class SimLog {
 public:
  SimLog(RoadNetwork network, TimeGrid grid, DemandMode mode);

  const RoadNetwork& network() const { return network_; }
  const TimeGrid& grid() const { return grid_; }
  DemandMode demand_mode() const { return mode_; }
  std::size_t steps() const { return grid_.steps; }
  /// Number of recorded snapshots (steps + 1 once the run is complete).
  std::size_t snapshots() const { return buffers_.size() / network_.node_count(); }

  std::span<const double> density(EdgeIndex e, std::size_t n) const;
  double buffer(NodeIndex v, std::size_t n) const;
  /// Total flow into node v during step n (includes a source's f_in).
  double node_inflow(NodeIndex v, std::size_t n) const;
  /// Total flow out of node v into its outgoing roads during step n.
  double node_outflow(NodeIndex v, std::size_t n) const;
  double edge_inflow(EdgeIndex e, std::size_t n) const;
  double edge_outflow(EdgeIndex e, std::size_t n) const;
  /// f_in of a source node during step n.
  double external_inflow(NodeIndex v, std::size_t n) const;

  const std::vector<NegativityEvent>& negativity_events() const { return events_; }

  void record_state(const SimState& state);
  void record_fluxes(const StepFluxes& fluxes);
  void add_events(const std::vector<NegativityEvent>& events);
  SimState state_at(std::size_t n) const;

 private:
  RoadNetwork network_;
  TimeGrid grid_;
  DemandMode mode_;
  std::vector<std::size_t> cell_offset_;
  std::size_t cells_ = 0;
  std::vector<double> densities_;
  std::vector<double> buffers_;
  std::vector<double> node_in_;
  std::vector<double> node_out_;
  std::vector<double> node_ext_;
  std::vector<double> edge_in_;
  std::vector<double> edge_out_;
  std::vector<NegativityEvent> events_;
};

/// Runs the whole horizon from the initial state.
SimLog simulate(const RoadNetwork& network, SimState initial, TimeGrid grid, DemandMode mode = DemandMode::Standard);

}  // namespace bufferlane
