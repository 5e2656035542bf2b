#include "bufferlane/router.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "bufferlane/error.hpp"

namespace bufferlane {

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Shortest: return "shortest";
    case PolicyKind::Fastest: return "fastest";
    case PolicyKind::Aggregated: return "aggregated";
    case PolicyKind::Online: return "online";
  }
  return "unknown";
}

PolicyKind parse_policy(std::string_view text) {
  for (auto kind : {PolicyKind::Shortest, PolicyKind::Fastest, PolicyKind::Aggregated, PolicyKind::Online}) {
    if (text == to_string(kind)) return kind;
  }
  throw Error(ErrorKind::InvalidParameter, "unknown policy '" + std::string(text) + "'");
}

void RoutePolicy::validate() const {
  if (!(w_rho >= 0.0 && w_rho <= 1.0 && w_r >= 0.0 && w_r <= 1.0) || std::abs(w_rho + w_r - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidParameter, "route weights must lie in [0,1] and sum to 1");
  }
}

namespace {

bool lex_less(const RoadNetwork& net, const std::vector<EdgeIndex>& a, const std::vector<EdgeIndex>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [&](EdgeIndex x, EdgeIndex y) {
    return net.edge(x).id < net.edge(y).id;
  });
}

bool same_cost(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

template <class Cost>
struct Label {
  bool reached = false;
  bool settled = false;
  Cost cost{};
  std::vector<EdgeIndex> path;
};

// Label-setting search shared by the static and time-dependent variants.
// `relax(v, cost, e)` returns the cost at the head of e or nullopt; `equal`
// and `less` compare costs.
template <class Cost, class Relax, class Equal, class Less>
std::vector<Label<Cost>> label_setting(const RoadNetwork& net, NodeIndex from, NodeIndex to, Cost start, Relax relax,
                                       Equal equal, Less less) {
  std::vector<Label<Cost>> labels(net.node_count());
  labels[from].reached = true;
  labels[from].cost = start;
  auto better = [&](const Cost& c, const std::vector<EdgeIndex>& p, const Label<Cost>& cur) {
    if (!cur.reached) return true;
    if (equal(c, cur.cost)) return lex_less(net, p, cur.path);
    return less(c, cur.cost);
  };
  while (true) {
    std::optional<NodeIndex> pick;
    for (NodeIndex v = 0; v < net.node_count(); ++v) {
      if (!labels[v].reached || labels[v].settled) continue;
      if (!pick || better(labels[v].cost, labels[v].path, labels[*pick])) pick = v;
    }
    if (!pick) break;
    const NodeIndex v = *pick;
    labels[v].settled = true;
    if (v == to) break;
    for (EdgeIndex e : net.outgoing(v)) {
      const NodeIndex w = net.head(e);
      if (labels[w].settled) continue;
      const std::optional<Cost> c = relax(v, labels[v].cost, e);
      if (!c) continue;
      std::vector<EdgeIndex> p = labels[v].path;
      p.push_back(e);
      if (better(*c, p, labels[w])) {
        labels[w].reached = true;
        labels[w].cost = *c;
        labels[w].path = std::move(p);
      }
    }
  }
  return labels;
}

}  // namespace

std::optional<StaticPath> static_path(const RoadNetwork& network, NodeIndex from, NodeIndex to,
                                      std::span<const double> weights) {
  if (weights.size() != network.edge_count()) throw Error(ErrorKind::InvalidParameter, "one weight per edge");
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error(ErrorKind::InvalidParameter, "edge weights must be non-negative");
  }
  auto labels = label_setting<double>(
      network, from, to, 0.0,
      [&](NodeIndex, double cost, EdgeIndex e) -> std::optional<double> { return cost + weights[e]; }, same_cost,
      std::less<double>{});
  if (!labels[to].reached) return std::nullopt;
  return StaticPath{labels[to].path, labels[to].cost};
}

StaticPath shortest_path(const RoadNetwork& network, NodeIndex from, NodeIndex to) {
  std::vector<double> lengths;
  lengths.reserve(network.edge_count());
  for (const auto& e : network.edges()) lengths.push_back(e.length);
  auto path = static_path(network, from, to, lengths);
  if (!path) {
    throw Error(ErrorKind::Unreachable,
                "node '" + network.node(to).id + "' cannot be reached from '" + network.node(from).id + "'");
  }
  return *path;
}

std::vector<double> aggregated_weights(const SimLog& log, double w_rho, double w_r) {
  const RoadNetwork& net = log.network();
  const TimeGrid& grid = log.grid();
  const double capacity = net.interior_capacity();
  const double scale = grid.tau / grid.horizon;
  std::vector<double> weights(net.edge_count(), 0.0);
  for (EdgeIndex e = 0; e < net.edge_count(); ++e) {
    double mass = 0.0;
    for (std::size_t n = 0; n <= grid.steps; ++n) {
      for (double rho : log.density(e, n)) mass += rho;
    }
    weights[e] = w_rho * scale * net.edge(e).cell_width() / net.max_length() * mass;
  }
  if (capacity > 0.0) {
    for (EdgeIndex e = 0; e < net.edge_count(); ++e) {
      const NodeIndex v = net.tail(e);
      double load = 0.0;
      for (std::size_t n = 0; n <= grid.steps; ++n) load += log.buffer(v, n);
      weights[e] += w_r * scale / capacity * load;
    }
  }
  return weights;
}

std::vector<double> online_weights(const SimLog& log, std::size_t n, double w_rho, double w_r) {
  const RoadNetwork& net = log.network();
  n = std::min(n, log.steps());
  const double capacity = net.interior_capacity();
  std::vector<double> weights(net.edge_count(), 0.0);
  for (EdgeIndex e = 0; e < net.edge_count(); ++e) {
    double mass = 0.0;
    for (double rho : log.density(e, n)) mass += rho;
    weights[e] = w_rho * net.edge(e).cell_width() / net.max_length() * mass;
    if (capacity > 0.0) weights[e] += w_r * log.buffer(net.tail(e), n) / capacity;
  }
  return weights;
}

TimedPath fastest_path(const CarTracker& tracker, NodeIndex from, Instant at, NodeIndex to) {
  const RoadNetwork& net = tracker.log().network();
  shortest_path(net, from, to);  // reachability
  std::map<std::tuple<EdgeIndex, std::size_t, double>, std::optional<Instant>> probes;
  auto relax = [&](NodeIndex v, Instant label, EdgeIndex e) -> std::optional<Instant> {
    const auto depart = tracker.leave_node(v, label);
    if (!depart) return std::nullopt;
    const auto key = std::make_tuple(e, depart->step, depart->offset);
    if (auto it = probes.find(key); it != probes.end()) return it->second;
    const EdgeTraversal run = tracker.drive(e, *depart, 0.0, false);
    std::optional<Instant> exit;
    if (run.completed) exit = run.exit;
    probes.emplace(key, exit);
    return exit;
  };
  auto labels = label_setting<Instant>(net, from, to, at, relax, std::equal_to<Instant>{}, std::less<Instant>{});
  if (!labels[to].reached) {
    throw Error(ErrorKind::HorizonExceeded, "no path reaches '" + net.node(to).id + "' before the horizon");
  }
  return {labels[to].path, labels[to].cost};
}

}  // namespace bufferlane
