#pragma once

#include <optional>
#include <vector>

#include "bufferlane/router.hpp"
#include "bufferlane/tracker.hpp"

namespace bufferlane {

struct CarStart {
  EdgeIndex edge = 0;
  double x = 0.0;
  double time = 0.0;
  NodeIndex destination = 0;
};

struct Leg {
  EdgeIndex edge = 0;
  Instant entry;
  Instant exit;
  double travel_time = 0.0;
};

struct Stop {
  NodeIndex node = 0;
  Instant arrival;
  Instant departure;
  double wait = 0.0;
};

/// Record of one tracked car. Trajectory distances are measured along the
/// path from the start of the first edge.
struct CarLog {
  std::vector<EdgeIndex> path;
  std::vector<Leg> legs;
  std::vector<Stop> stops;
  std::vector<TrajectorySample> trajectory;
  CarStatus status = CarStatus::Driving;
  double departure = 0.0;
  std::optional<double> arrival;
  std::optional<double> predicted_arrival;  // fastest policy only

  double total_wait() const;
  double total_travel() const;
  double path_length(const RoadNetwork& network) const;
};

/// Tracks a car from its start until it reaches the end of a road into the
/// destination, choosing edges by `policy`. A car that is still on the road
/// or queueing at the horizon ends with status HorizonExceeded. Throws
/// Unreachable when the destination cannot be reached.
CarLog track_car(const CarTracker& tracker, const CarStart& start, const RoutePolicy& policy);

}  // namespace bufferlane
