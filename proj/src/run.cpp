#include "bufferlane/run.hpp"

namespace bufferlane {

std::optional<ExactTrajectory> oracle_for(OracleKind kind) {
  switch (kind) {
    case OracleKind::None: return std::nullopt;
    case OracleKind::LinearNetwork: return linear_network_exact();
    case OracleKind::Rarefaction: return rarefaction_exact();
  }
  return std::nullopt;
}

CarLog track_scenario_car(const ScenarioDoc& doc, const SimLog& log) {
  const CarSection& c = doc.car.value();
  const CarTracker tracker(log, c.tracker);
  return track_car(tracker, build_car_start(doc, log.network()), RoutePolicy{c.policy, c.w_rho, c.w_r});
}

RunResult run_scenario(const ScenarioDoc& doc) {
  const RoadNetwork net = build_network(doc);
  RunResult result{simulate(net, build_initial_state(doc, net), build_time_grid(doc, net), doc.run.demand_mode),
                   std::nullopt, std::nullopt};
  if (!doc.car) return result;
  result.car = track_scenario_car(doc, result.log);
  if (auto exact = oracle_for(doc.car->oracle)) {
    const auto samples = grid_positions(result.car->trajectory);
    result.oracle_error = truncation_error(samples, *exact, result.log.grid().tau);
  }
  return result;
}

}  // namespace bufferlane
