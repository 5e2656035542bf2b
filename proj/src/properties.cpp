#include "bufferlane/properties.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bufferlane/tracker.hpp"

namespace bufferlane {

ConservationReport check_conservation(const ScenarioDoc& doc) {
  const RoadNetwork net = build_network(doc);
  SimState state = build_initial_state(doc, net);
  const TimeGrid grid = build_time_grid(doc, net);
  ConservationReport report;
  double mass = total_mass(net, state);
  for (std::size_t n = 0; n < grid.steps; ++n) {
    const StepFluxes q = advance_step(net, state, grid.tau, grid.time(n), doc.run.demand_mode);
    double boundary = 0.0;
    for (NodeIndex v = 0; v < net.node_count(); ++v) {
      if (net.node(v).kind == NodeKind::Source) boundary += q.junction[v].external_inflow;
      if (net.node(v).kind == NodeKind::Sink) boundary -= q.junction[v].out[0];
    }
    const double next = total_mass(net, state);
    report.worst_balance = std::max(report.worst_balance, std::abs(next - mass - grid.tau * boundary));
    mass = next;
    for (NodeIndex v = 0; v < net.node_count(); ++v) {
      const JunctionSpec& spec = net.node(v);
      if (spec.kind == NodeKind::Sink) continue;
      const double r = state.buffer[v];
      report.worst_bound = std::max({report.worst_bound, -r, r - spec.r_max});
    }
    ++report.steps;
  }
  return report;
}

FifoReport check_fifo(const ScenarioDoc& doc, std::mt19937_64& rng, std::size_t pairs, TrackerKind tracker) {
  const RoadNetwork net = build_network(doc);
  const TimeGrid grid = build_time_grid(doc, net);
  const SimLog log = simulate(net, build_initial_state(doc, net), grid, doc.run.demand_mode);
  const CarTracker car(log, tracker);

  auto exit_time = [&](EdgeIndex e, double t) -> std::optional<double> {
    const auto depart = car.leave_node(net.tail(e), make_instant(t, grid.tau));
    if (!depart) return std::nullopt;
    const EdgeTraversal run = car.drive(e, *depart, 0.0, false);
    if (!run.completed) return std::nullopt;
    return run.exit.time(grid.tau);
  };

  FifoReport report;
  report.worst_gap = -std::numeric_limits<double>::infinity();
  for (EdgeIndex e = 0; e < net.edge_count(); ++e) {
    // Cars are never faster than 1, so later departures cannot finish.
    const double latest = grid.horizon - net.edge(e).length;
    if (!(latest > 0.0)) continue;
    std::uniform_real_distribution<double> when(0.0, latest);
    for (std::size_t k = 0; k < pairs; ++k) {
      double t = when(rng);
      double later = when(rng);
      if (later < t) std::swap(t, later);
      if (later == t) continue;
      const auto a = exit_time(e, t);
      const auto b = exit_time(e, later);
      if (!a || !b) continue;
      ++report.pairs;
      report.worst_gap = std::max(report.worst_gap, *a - *b);
    }
  }
  return report;
}

}  // namespace bufferlane
