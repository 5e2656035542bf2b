#include "bufferlane/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bufferlane/error.hpp"
#include "bufferlane/flux.hpp"

namespace bufferlane {

namespace {
constexpr double kDensitySlack = 1e-10;
}

double cfl_timestep(const RoadNetwork& network) {
  return 0.5 * network.min_cell_width() / flux::kMaxWaveSpeed;
}

TimeGrid fit_time_grid(double tau_bound, double horizon) {
  if (!(tau_bound > 0.0) || !(horizon > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "time step and horizon must be positive");
  }
  TimeGrid grid;
  grid.horizon = horizon;
  // Guard against ceil() rounding 160.00000000000003 up to 161.
  const double ratio = horizon / tau_bound;
  double steps = std::round(ratio);
  if (std::abs(ratio - steps) > 1e-9 * std::max(1.0, ratio)) steps = std::ceil(ratio);
  grid.steps = static_cast<std::size_t>(std::max(1.0, steps));
  grid.tau = horizon / static_cast<double>(grid.steps);
  if (grid.tau > tau_bound * (1.0 + 1e-12)) {
    grid.steps += 1;
    grid.tau = horizon / static_cast<double>(grid.steps);
  }
  return grid;
}

std::vector<double> project_density(const Edge& edge, std::span<const DensityPiece> pieces) {
  const Grid grid = build_grid(edge);
  std::vector<double> cells(static_cast<std::size_t>(edge.cells), 0.0);
  if (pieces.empty()) return cells;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double lo = grid.points[i];
    const double hi = grid.points[i + 1];
    double integral = 0.0;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      const double start = k == 0 ? 0.0 : pieces[k].start;
      const double stop = k + 1 < pieces.size() ? pieces[k + 1].start : edge.length;
      const double overlap = std::min(hi, stop) - std::max(lo, start);
      if (overlap > 0.0) integral += overlap * pieces[k].value;
    }
    cells[i] = flux::checked_density(integral / (hi - lo));
  }
  return cells;
}

double total_mass(const RoadNetwork& network, const SimState& state) {
  double mass = 0.0;
  for (EdgeIndex e = 0; e < network.edge_count(); ++e) {
    double sum = 0.0;
    for (double rho : state.density[e]) sum += rho;
    mass += network.edge(e).cell_width() * sum;
  }
  for (NodeIndex v = 0; v < network.node_count(); ++v) {
    if (network.node(v).kind != NodeKind::Sink) mass += state.buffer[v];
  }
  return mass;
}

StepFluxes advance_step(const RoadNetwork& network, SimState& state, double tau, double time, DemandMode mode,
                        std::vector<NegativityEvent>* negativity) {
  StepFluxes fluxes;
  fluxes.junction.resize(network.node_count());

  for (NodeIndex v = 0; v < network.node_count(); ++v) {
    const JunctionSpec& spec = network.node(v);
    JunctionInputs inputs;
    const auto& in_edges = network.incoming(v);
    const auto& out_edges = network.outgoing(v);
    for (std::size_t k = 0; k < in_edges.size(); ++k) inputs.incoming_end[k] = state.density[in_edges[k]].back();
    for (std::size_t k = 0; k < out_edges.size(); ++k) inputs.outgoing_start[k] = state.density[out_edges[k]].front();
    const double inflow = spec.kind == NodeKind::Source ? spec.inflow.at(time) : 0.0;
    fluxes.junction[v] = step_fluxes(spec, inputs, state.buffer[v], tau, mode, inflow);
  }

  std::vector<double> edge_in(network.edge_count(), 0.0);
  std::vector<double> edge_out(network.edge_count(), 0.0);
  for (NodeIndex v = 0; v < network.node_count(); ++v) {
    const auto& in_edges = network.incoming(v);
    const auto& out_edges = network.outgoing(v);
    for (std::size_t k = 0; k < in_edges.size(); ++k) edge_out[in_edges[k]] = fluxes.junction[v].out[k];
    for (std::size_t k = 0; k < out_edges.size(); ++k) edge_in[out_edges[k]] = fluxes.junction[v].in[k];
  }

  std::vector<double> interface;
  for (EdgeIndex e = 0; e < network.edge_count(); ++e) {
    auto& rho = state.density[e];
    const std::size_t n = rho.size();
    const double ratio = tau / network.edge(e).cell_width();
    // interface[i] is the flux through x_i, i = 0..N.
    interface.assign(n + 1, 0.0);
    interface[0] = edge_in[e];
    interface[n] = edge_out[e];
    for (std::size_t i = 1; i < n; ++i) interface[i] = flux::godunov_flux(rho[i - 1], rho[i]);
    for (std::size_t i = 0; i < n; ++i) {
      double next = rho[i] - ratio * (interface[i + 1] - interface[i]);
      if (next < -kDensitySlack || next > flux::kRhoMax + kDensitySlack) {
        throw Error(ErrorKind::CflViolation, "edge '" + network.edge(e).id + "' cell " + std::to_string(i) +
                                                 " density " + std::to_string(next));
      }
      rho[i] = std::clamp(next, 0.0, flux::kRhoMax);
    }
  }

  for (NodeIndex v = 0; v < network.node_count(); ++v) {
    const JunctionSpec& spec = network.node(v);
    if (spec.kind == NodeKind::Sink) continue;
    const JunctionFluxes& q = fluxes.junction[v];
    BufferUpdate update = buffer_step(state.buffer[v], q.total_inflow(), q.total_outflow(), tau, spec.r_max, mode);
    state.buffer[v] = update.load;
    if (update.negative && negativity != nullptr) {
      negativity->push_back({state.step + 1, v, update.load});
    }
  }
  ++state.step;
  return fluxes;
}

SimLog::SimLog(RoadNetwork network, TimeGrid grid, DemandMode mode)
    : network_(std::move(network)), grid_(grid), mode_(mode) {
  cell_offset_.reserve(network_.edge_count());
  for (const auto& edge : network_.edges()) {
    cell_offset_.push_back(cells_);
    cells_ += static_cast<std::size_t>(edge.cells);
  }
  const std::size_t snapshots = grid_.steps + 1;
  densities_.reserve(snapshots * cells_);
  buffers_.reserve(snapshots * network_.node_count());
  node_in_.reserve(grid_.steps * network_.node_count());
  node_out_.reserve(grid_.steps * network_.node_count());
  node_ext_.reserve(grid_.steps * network_.node_count());
  edge_in_.reserve(grid_.steps * network_.edge_count());
  edge_out_.reserve(grid_.steps * network_.edge_count());
}

std::span<const double> SimLog::density(EdgeIndex e, std::size_t n) const {
  const std::size_t cells = static_cast<std::size_t>(network_.edge(e).cells);
  return {densities_.data() + n * cells_ + cell_offset_[e], cells};
}

double SimLog::buffer(NodeIndex v, std::size_t n) const { return buffers_[n * network_.node_count() + v]; }
double SimLog::node_inflow(NodeIndex v, std::size_t n) const { return node_in_[n * network_.node_count() + v]; }
double SimLog::node_outflow(NodeIndex v, std::size_t n) const { return node_out_[n * network_.node_count() + v]; }
double SimLog::external_inflow(NodeIndex v, std::size_t n) const {
  return node_ext_[n * network_.node_count() + v];
}
double SimLog::edge_inflow(EdgeIndex e, std::size_t n) const { return edge_in_[n * network_.edge_count() + e]; }
double SimLog::edge_outflow(EdgeIndex e, std::size_t n) const { return edge_out_[n * network_.edge_count() + e]; }

void SimLog::record_state(const SimState& state) {
  for (const auto& rho : state.density) densities_.insert(densities_.end(), rho.begin(), rho.end());
  buffers_.insert(buffers_.end(), state.buffer.begin(), state.buffer.end());
}

void SimLog::record_fluxes(const StepFluxes& fluxes) {
  for (const auto& q : fluxes.junction) {
    node_in_.push_back(q.total_inflow());
    node_out_.push_back(q.total_outflow());
    node_ext_.push_back(q.external_inflow);
  }
  const std::size_t base = edge_in_.size();
  edge_in_.resize(base + network_.edge_count(), 0.0);
  edge_out_.resize(base + network_.edge_count(), 0.0);
  for (NodeIndex v = 0; v < network_.node_count(); ++v) {
    const auto& in_edges = network_.incoming(v);
    const auto& out_edges = network_.outgoing(v);
    for (std::size_t k = 0; k < in_edges.size(); ++k) edge_out_[base + in_edges[k]] = fluxes.junction[v].out[k];
    for (std::size_t k = 0; k < out_edges.size(); ++k) edge_in_[base + out_edges[k]] = fluxes.junction[v].in[k];
  }
}

void SimLog::add_events(const std::vector<NegativityEvent>& events) {
  events_.insert(events_.end(), events.begin(), events.end());
}

SimState SimLog::state_at(std::size_t n) const {
  SimState state;
  state.step = n;
  state.density.reserve(network_.edge_count());
  for (EdgeIndex e = 0; e < network_.edge_count(); ++e) {
    auto cells = density(e, n);
    state.density.emplace_back(cells.begin(), cells.end());
  }
  state.buffer.reserve(network_.node_count());
  for (NodeIndex v = 0; v < network_.node_count(); ++v) state.buffer.push_back(buffer(v, n));
  return state;
}

SimLog simulate(const RoadNetwork& network, SimState initial, TimeGrid grid, DemandMode mode) {
  if (initial.density.size() != network.edge_count() || initial.buffer.size() != network.node_count()) {
    throw Error(ErrorKind::InvalidParameter, "initial state does not match the network");
  }
  for (EdgeIndex e = 0; e < network.edge_count(); ++e) {
    if (initial.density[e].size() != static_cast<std::size_t>(network.edge(e).cells)) {
      throw Error(ErrorKind::InvalidParameter, "initial density of edge '" + network.edge(e).id + "' has wrong size");
    }
    for (double& rho : initial.density[e]) rho = flux::checked_density(rho);
  }
  for (NodeIndex v = 0; v < network.node_count(); ++v) {
    const double r = initial.buffer[v];
    if (!(r >= 0.0 && r <= network.node(v).r_max)) {
      throw Error(ErrorKind::BufferOutOfRange, "initial load of node '" + network.node(v).id + "'");
    }
    if (network.node(v).kind == NodeKind::Sink) initial.buffer[v] = 0.0;
  }
  if (grid.tau > cfl_timestep(network) * (1.0 + 1e-12)) {
    throw Error(ErrorKind::CflViolation, "time step exceeds the CFL bound");
  }

  SimLog log(network, grid, mode);
  initial.step = 0;
  log.record_state(initial);
  std::vector<NegativityEvent> events;
  for (std::size_t n = 0; n < grid.steps; ++n) {
    StepFluxes fluxes = advance_step(network, initial, grid.tau, grid.time(n), mode, &events);
    log.record_fluxes(fluxes);
    log.record_state(initial);
  }
  log.add_events(events);
  return log;
}

}  // namespace bufferlane
