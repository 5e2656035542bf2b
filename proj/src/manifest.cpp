#include "bufferlane/manifest.hpp"

#include <json.hpp>

namespace bufferlane {

std::string manifest_json(const ScenarioDoc& doc, const std::string& scenario_path, const SimLog& log,
                          const CarLog* car, std::optional<double> oracle_error) {
  using nlohmann::ordered_json;
  const RoadNetwork& net = log.network();
  const TimeGrid& grid = log.grid();

  ordered_json cells = ordered_json::object();
  for (const auto& e : net.edges()) cells[e.id] = e.cells;

  ordered_json m;
  m["tool"] = "bufferlane";
  m["version"] = kVersion;
  m["scenario_path"] = scenario_path;
  m["scenario"] = serialize_scenario(doc);
  m["discretization"] = {{"T", grid.horizon},
                         {"h", doc.run.h},
                         {"tau", grid.tau},
                         {"steps", grid.steps},
                         {"demand_mode", to_string(doc.run.demand_mode)},
                         {"log_stride", doc.run.log_stride},
                         {"cells", cells}};

  ordered_json events = ordered_json::array();
  for (const auto& ev : log.negativity_events()) {
    events.push_back({{"t", grid.time(ev.step)}, {"node", net.node(ev.node).id}, {"load", ev.load}});
  }
  m["negativity_events"] = events;

  if (car != nullptr && doc.car) {
    ordered_json path = ordered_json::array();
    for (EdgeIndex e : car->path) path.push_back(net.edge(e).id);
    ordered_json r;
    r["tracker"] = to_string(doc.car->tracker);
    r["policy"] = to_string(doc.car->policy);
    r["w_rho"] = doc.car->w_rho;
    r["w_r"] = doc.car->w_r;
    r["status"] = to_string(car->status);
    r["path"] = path;
    r["path_length"] = car->path_length(net);
    r["departure"] = car->departure;
    r["arrival"] = car->arrival ? ordered_json(*car->arrival) : ordered_json(nullptr);
    r["predicted_arrival"] = car->predicted_arrival ? ordered_json(*car->predicted_arrival) : ordered_json(nullptr);
    r["total_travel"] = car->total_travel();
    r["total_wait"] = car->total_wait();
    if (oracle_error) r["oracle_error"] = *oracle_error;
    m["car"] = r;
  }
  return m.dump(2) + "\n";
}

}  // namespace bufferlane
