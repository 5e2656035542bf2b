#include "bufferlane/journey.hpp"

#include <string>

#include "bufferlane/error.hpp"

namespace bufferlane {

double CarLog::total_wait() const {
  double sum = 0.0;
  for (const auto& s : stops) sum += s.wait;
  return sum;
}

double CarLog::total_travel() const {
  double sum = 0.0;
  for (const auto& l : legs) sum += l.travel_time;
  return sum;
}

double CarLog::path_length(const RoadNetwork& network) const {
  double sum = 0.0;
  for (EdgeIndex e : path) sum += network.edge(e).length;
  return sum;
}

namespace {

class Planner {
 public:
  Planner(const CarTracker& tracker, const RoutePolicy& policy, NodeIndex destination)
      : tracker_(tracker), net_(tracker.log().network()), policy_(policy), destination_(destination) {}

  // Next edge for a car that reached node v at `arrival`.
  EdgeIndex next(NodeIndex v, Instant arrival, CarLog& car) {
    const bool replan = plan_.empty() || pos_ >= plan_.size() ||
                        (policy_.kind == PolicyKind::Online && net_.outgoing(v).size() > 1);
    if (replan) {
      plan_ = route_from(v, arrival, car);
      pos_ = 0;
    }
    if (pos_ >= plan_.size() || net_.tail(plan_[pos_]) != v) {
      throw Error(ErrorKind::Unreachable, "route lost at node '" + net_.node(v).id + "'");
    }
    return plan_[pos_++];
  }

 private:
  std::vector<EdgeIndex> route_from(NodeIndex v, Instant arrival, CarLog& car) const {
    switch (policy_.kind) {
      case PolicyKind::Shortest: return shortest_path(net_, v, destination_).edges;
      case PolicyKind::Fastest: {
        TimedPath p = fastest_path(tracker_, v, arrival, destination_);
        car.predicted_arrival = p.arrival.time(tracker_.tau());
        return p.edges;
      }
      case PolicyKind::Aggregated: {
        const auto w = aggregated_weights(tracker_.log(), policy_.w_rho, policy_.w_r);
        return checked(static_path(net_, v, destination_, w), v);
      }
      case PolicyKind::Online: {
        const auto w = online_weights(tracker_.log(), arrival.step, policy_.w_rho, policy_.w_r);
        return checked(static_path(net_, v, destination_, w), v);
      }
    }
    return {};
  }

  std::vector<EdgeIndex> checked(std::optional<StaticPath> p, NodeIndex v) const {
    if (!p) {
      throw Error(ErrorKind::Unreachable,
                  "node '" + net_.node(destination_).id + "' cannot be reached from '" + net_.node(v).id + "'");
    }
    return std::move(p->edges);
  }

  const CarTracker& tracker_;
  const RoadNetwork& net_;
  RoutePolicy policy_;
  NodeIndex destination_;
  std::vector<EdgeIndex> plan_;
  std::size_t pos_ = 0;
};

}  // namespace

CarLog track_car(const CarTracker& tracker, const CarStart& start, const RoutePolicy& policy) {
  policy.validate();
  const SimLog& log = tracker.log();
  const RoadNetwork& net = log.network();
  const double tau = tracker.tau();
  if (start.edge >= net.edge_count() || start.destination >= net.node_count()) {
    throw Error(ErrorKind::InvalidParameter, "unknown start edge or destination");
  }
  if (!(start.x >= 0.0 && start.x <= net.edge(start.edge).length)) {
    throw Error(ErrorKind::InvalidParameter, "start position outside the road");
  }
  if (!(start.time >= 0.0 && start.time <= log.grid().horizon)) {
    throw Error(ErrorKind::InvalidParameter, "start time outside [0, T]");
  }
  if (net.head(start.edge) != start.destination) shortest_path(net, net.head(start.edge), start.destination);

  Planner planner(tracker, policy, start.destination);
  CarLog car;
  car.departure = start.time;

  EdgeIndex e = start.edge;
  double x0 = start.x;
  Instant at = make_instant(start.time, tau);
  double before = 0.0;  // length of the edges already completed
  while (true) {
    car.path.push_back(e);
    EdgeTraversal run = tracker.drive(e, at, x0);
    for (auto& s : run.samples) {
      s.distance = before + s.x;
      car.trajectory.push_back(s);
    }
    if (!run.completed) {
      car.status = CarStatus::HorizonExceeded;
      return car;
    }
    car.legs.push_back({e, at, run.exit, run.exit.time(tau) - at.time(tau)});
    const double length = net.edge(e).length;
    const NodeIndex v = net.head(e);
    if (v == start.destination) {
      car.status = CarStatus::Arrived;
      car.arrival = run.exit.time(tau);
      car.trajectory.back().status = CarStatus::Arrived;
      return car;
    }
    const EdgeIndex next = planner.next(v, run.exit, car);
    const auto departure = tracker.leave_node(v, run.exit);
    const std::size_t last = departure ? departure->step : log.steps() + 1;
    for (std::size_t n = run.exit.step + 1; n < last; ++n) {
      car.trajectory.push_back({log.grid().time(n), e, length, before + length, CarStatus::Waiting, true});
    }
    if (departure && departure->step > run.exit.step && departure->offset > 0.0) {
      car.trajectory.push_back(
          {log.grid().time(departure->step), e, length, before + length, CarStatus::Waiting, true});
    }
    if (!departure) {
      car.stops.push_back({v, run.exit, Instant{log.steps(), 0.0}, log.grid().horizon - run.exit.time(tau)});
      car.status = CarStatus::HorizonExceeded;
      return car;
    }
    car.stops.push_back({v, run.exit, *departure, departure->time(tau) - run.exit.time(tau)});
    before += length;
    e = next;
    x0 = 0.0;
    at = *departure;
  }
}

}  // namespace bufferlane
