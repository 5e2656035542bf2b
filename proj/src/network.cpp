#include "bufferlane/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bufferlane/error.hpp"
#include "bufferlane/flux.hpp"

namespace bufferlane {

namespace {

constexpr double kRateTolerance = 1e-12;

std::pair<std::size_t, std::size_t> expected_degree(NodeKind kind) {
  switch (kind) {
    case NodeKind::Source: return {0, 1};
    case NodeKind::Sink: return {1, 0};
    case NodeKind::OneToOne: return {1, 1};
    case NodeKind::OneToTwo: return {1, 2};
    case NodeKind::TwoToOne: return {2, 1};
  }
  return {0, 0};
}

void check_shares(const std::string& node, double a, double b, const char* what) {
  if (!(a > 0.0 && b > 0.0) || std::abs(a + b - 1.0) > kRateTolerance) {
    throw Error(ErrorKind::RateSumViolation, "node '" + node + "': " + what + " must be positive and sum to 1");
  }
}

}  // namespace

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Source: return "source";
    case NodeKind::Sink: return "sink";
    case NodeKind::OneToOne: return "one_to_one";
    case NodeKind::OneToTwo: return "one_to_two";
    case NodeKind::TwoToOne: return "two_to_one";
  }
  return "unknown";
}

InflowProfile::InflowProfile(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  for (std::size_t k = 1; k < pieces_.size(); ++k) {
    if (!(pieces_[k].start > pieces_[k - 1].start)) {
      throw Error(ErrorKind::InvalidParameter, "inflow breakpoints must be strictly increasing");
    }
  }
}

double InflowProfile::at(double t) const {
  if (pieces_.empty()) return 0.0;
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                             [](double time, const Piece& p) { return time < p.start; });
  if (it == pieces_.begin()) return pieces_.front().value;
  return std::prev(it)->value;
}

Grid build_grid(const Edge& edge) {
  Grid grid;
  grid.width = edge.cell_width();
  grid.points.resize(static_cast<std::size_t>(edge.cells) + 1);
  for (int i = 0; i <= edge.cells; ++i) {
    grid.points[static_cast<std::size_t>(i)] = edge.length * i / edge.cells;
  }
  return grid;
}

int cells_for(double length, double target_width) {
  if (!(target_width > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "target cell width must be positive");
  }
  return std::max(2, static_cast<int>(std::lround(length / target_width)));
}

RoadNetwork RoadNetwork::validate(std::vector<JunctionSpec> nodes, std::vector<Edge> edges) {
  RoadNetwork net;
  net.nodes_ = std::move(nodes);
  net.edges_ = std::move(edges);

  for (std::size_t v = 0; v < net.nodes_.size(); ++v) {
    if (!net.node_lookup_.emplace(net.nodes_[v].id, v).second) {
      throw Error(ErrorKind::InvalidParameter, "duplicate node id '" + net.nodes_[v].id + "'");
    }
  }
  net.incoming_.assign(net.nodes_.size(), {});
  net.outgoing_.assign(net.nodes_.size(), {});

  for (std::size_t e = 0; e < net.edges_.size(); ++e) {
    const Edge& edge = net.edges_[e];
    if (!net.edge_lookup_.emplace(edge.id, e).second) {
      throw Error(ErrorKind::InvalidParameter, "duplicate edge id '" + edge.id + "'");
    }
    if (!(edge.length > 0.0) || !std::isfinite(edge.length)) {
      throw Error(ErrorKind::NonPositiveLength, "edge '" + edge.id + "'");
    }
    if (edge.cells < 2) {
      throw Error(ErrorKind::InvalidParameter, "edge '" + edge.id + "' needs at least 2 cells");
    }
    auto from = net.node_lookup_.find(edge.from);
    auto to = net.node_lookup_.find(edge.to);
    if (from == net.node_lookup_.end() || to == net.node_lookup_.end()) {
      throw Error(ErrorKind::InvalidParameter, "edge '" + edge.id + "' references an unknown node");
    }
    if (from->second == to->second) {
      throw Error(ErrorKind::InvalidParameter, "edge '" + edge.id + "' is a self-loop");
    }
    net.tail_.push_back(from->second);
    net.head_.push_back(to->second);
    net.outgoing_[from->second].push_back(e);
    net.incoming_[to->second].push_back(e);
  }

  for (std::size_t v = 0; v < net.nodes_.size(); ++v) {
    const JunctionSpec& node = net.nodes_[v];
    auto [in_deg, out_deg] = expected_degree(node.kind);
    if (net.incoming_[v].size() != in_deg || net.outgoing_[v].size() != out_deg) {
      throw Error(ErrorKind::DegreeMismatch,
                  "node '" + node.id + "' of kind " + std::string(to_string(node.kind)) + " has in/out degree " +
                      std::to_string(net.incoming_[v].size()) + "/" + std::to_string(net.outgoing_[v].size()));
    }
    if (node.kind == NodeKind::OneToTwo) {
      check_shares(node.id, node.alpha[0], node.alpha[1], "distribution rates");
    }
    if (node.kind == NodeKind::TwoToOne) {
      if (const auto* fixed = std::get_if<FixedPriority>(&node.priority)) {
        check_shares(node.id, fixed->first, fixed->second, "priorities");
      }
    }
    if (node.kind == NodeKind::Source || node.kind == NodeKind::Sink) {
      if (std::isfinite(node.r_max)) {
        throw Error(ErrorKind::InvalidParameter, "node '" + node.id + "': sources and sinks have unbounded buffers");
      }
    } else if (!(node.r_max > 0.0)) {
      throw Error(ErrorKind::InvalidParameter, "node '" + node.id + "': buffer capacity must be positive");
    }
    if (node.kind != NodeKind::Sink) {
      double bound = static_cast<double>(std::max(in_deg, out_deg)) * flux::kCapacity;
      if (!(node.mu > 0.0 && node.mu <= bound)) {
        throw Error(ErrorKind::InvalidParameter,
                    "node '" + node.id + "': buffer rate must lie in (0, " + std::to_string(bound) + "]");
      }
    }
    if (node.kind == NodeKind::Source) {
      for (const auto& piece : node.inflow.pieces()) {
        if (!(piece.value >= 0.0)) {
          throw Error(ErrorKind::NegativeInflow, "node '" + node.id + "'");
        }
      }
    }
  }

  // Weak connectivity.
  if (!net.nodes_.empty()) {
    std::vector<std::size_t> parent(net.nodes_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t e = 0; e < net.edges_.size(); ++e) parent[find(net.tail_[e])] = find(net.head_[e]);
    for (std::size_t v = 1; v < net.nodes_.size(); ++v) {
      if (find(v) != find(0)) throw Error(ErrorKind::DisconnectedGraph, "node '" + net.nodes_[v].id + "'");
    }
  } else {
    throw Error(ErrorKind::DisconnectedGraph, "network has no nodes");
  }
  return net;
}

NodeIndex RoadNetwork::node_index(std::string_view id) const {
  auto it = node_lookup_.find(std::string(id));
  if (it == node_lookup_.end()) throw Error(ErrorKind::InvalidParameter, "unknown node '" + std::string(id) + "'");
  return it->second;
}

EdgeIndex RoadNetwork::edge_index(std::string_view id) const {
  auto it = edge_lookup_.find(std::string(id));
  if (it == edge_lookup_.end()) throw Error(ErrorKind::InvalidParameter, "unknown edge '" + std::string(id) + "'");
  return it->second;
}

bool RoadNetwork::has_node(std::string_view id) const { return node_lookup_.count(std::string(id)) > 0; }
bool RoadNetwork::has_edge(std::string_view id) const { return edge_lookup_.count(std::string(id)) > 0; }

double RoadNetwork::max_length() const {
  double m = 0.0;
  for (const auto& e : edges_) m = std::max(m, e.length);
  return m;
}

double RoadNetwork::min_cell_width() const {
  double m = kUnbounded;
  for (const auto& e : edges_) m = std::min(m, e.cell_width());
  return m;
}

double RoadNetwork::interior_capacity() const {
  double m = 0.0;
  for (const auto& n : nodes_) {
    if (n.kind == NodeKind::Source || n.kind == NodeKind::Sink) continue;
    if (std::isfinite(n.r_max)) m = std::max(m, n.r_max);
  }
  return m;
}

}  // namespace bufferlane
