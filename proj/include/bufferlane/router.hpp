#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bufferlane/network.hpp"
#include "bufferlane/solver.hpp"
#include "bufferlane/tracker.hpp"

namespace bufferlane {

enum class PolicyKind { Shortest, Fastest, Aggregated, Online };

std::string_view to_string(PolicyKind kind);
PolicyKind parse_policy(std::string_view text);

/// Route choice rule. The weights only matter for Aggregated and Online and
/// must sum to 1.
struct RoutePolicy {
  PolicyKind kind = PolicyKind::Shortest;
  double w_rho = 0.5;
  double w_r = 0.5;

  void validate() const;
};

struct StaticPath {
  std::vector<EdgeIndex> edges;
  double cost = 0.0;
};

/// Dijkstra on fixed non-negative edge weights. Equal costs (within 1e-12
/// relative) are resolved towards the lexicographically smallest sequence of
/// edge ids. nullopt when `to` cannot be reached.
std::optional<StaticPath> static_path(const RoadNetwork& network, NodeIndex from, NodeIndex to,
                                      std::span<const double> weights);

/// Minimal total road length. Throws Unreachable.
StaticPath shortest_path(const RoadNetwork& network, NodeIndex from, NodeIndex to);

/// Time-averaged occupancy weights over the whole run:
/// w_rho * tau h_e / (T max L) * sum_n sum_i rho + w_r * tau / (T r^max) * sum_n r_v,
/// with v the tail of e and n = 0..M. The buffer term is dropped when no
/// interior junction has a finite capacity.
std::vector<double> aggregated_weights(const SimLog& log, double w_rho, double w_r);

/// Snapshot weights at t^n: w_rho * h_e / max L * sum_i rho + w_r * r_v / r^max.
std::vector<double> online_weights(const SimLog& log, std::size_t n, double w_rho, double w_r);

struct TimedPath {
  std::vector<EdgeIndex> edges;
  Instant arrival;  // at the destination, no waiting charged there
};

/// Earliest arrival at `to` for a car reaching node `from` at `at`, by
/// time-dependent Dijkstra over tracker probes (wait at the node, then drive).
/// Throws Unreachable when no path exists, HorizonExceeded when every path
/// runs past the horizon.
TimedPath fastest_path(const CarTracker& tracker, NodeIndex from, Instant at, NodeIndex to);

}  // namespace bufferlane
