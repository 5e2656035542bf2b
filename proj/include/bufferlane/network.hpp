#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace bufferlane {

using NodeIndex = std::size_t;
using EdgeIndex = std::size_t;

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

enum class NodeKind { Source, Sink, OneToOne, OneToTwo, TwoToOne };

std::string_view to_string(NodeKind kind);

/// Right-of-way shares (c_{3,1}, c_{3,2}) of a merging junction.
struct FixedPriority {
  double first = 0.5;
  double second = 0.5;
  bool operator==(const FixedPriority&) const = default;
};

/// Shares proportional to the current demands of the two incoming roads.
struct DemandProportional {
  bool operator==(const DemandProportional&) const = default;
};

using Priority = std::variant<FixedPriority, DemandProportional>;

/// Piecewise-constant function of time. Piece k holds `value` on
/// [start_k, start_{k+1}); the first piece extends back to t = 0.
class InflowProfile {
 public:
  struct Piece {
    double start = 0.0;
    double value = 0.0;
    bool operator==(const Piece&) const = default;
  };

  InflowProfile() = default;
  explicit InflowProfile(double constant) : pieces_{{0.0, constant}} {}
  explicit InflowProfile(std::vector<Piece> pieces);

  double at(double t) const;
  const std::vector<Piece>& pieces() const { return pieces_; }
  bool operator==(const InflowProfile&) const = default;

 private:
  std::vector<Piece> pieces_;
};

struct JunctionSpec {
  std::string id;
  NodeKind kind = NodeKind::OneToOne;
  double r_max = kUnbounded;
  double mu = 0.25;
  std::array<double, 2> alpha{0.5, 0.5};  // OneToTwo only, in outgoing declaration order
  Priority priority = DemandProportional{};  // TwoToOne only, in incoming declaration order
  InflowProfile inflow;                       // Source only

  bool operator==(const JunctionSpec&) const = default;
};

struct Edge {
  std::string id;
  std::string from;
  std::string to;
  double length = 1.0;
  int cells = 10;

  double cell_width() const { return length / cells; }
  bool operator==(const Edge&) const = default;
};

/// Cell boundaries x_0 = 0 < ... < x_N = L of one road.
struct Grid {
  double width = 0.0;
  std::vector<double> points;
};

Grid build_grid(const Edge& edge);

/// Cell count for a road of the given length at target width h (at least 2).
int cells_for(double length, double target_width);

/// Directed road graph with typed junctions. Only constructible through
/// validate(), so every instance satisfies the structural invariants.
class RoadNetwork {
 public:
  static RoadNetwork validate(std::vector<JunctionSpec> nodes, std::vector<Edge> edges);

  const std::vector<JunctionSpec>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const JunctionSpec& node(NodeIndex v) const { return nodes_[v]; }
  const Edge& edge(EdgeIndex e) const { return edges_[e]; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  NodeIndex node_index(std::string_view id) const;
  EdgeIndex edge_index(std::string_view id) const;
  bool has_node(std::string_view id) const;
  bool has_edge(std::string_view id) const;

  /// Roads ending at v, in declaration order.
  const std::vector<EdgeIndex>& incoming(NodeIndex v) const { return incoming_[v]; }
  /// Roads starting at v, in declaration order.
  const std::vector<EdgeIndex>& outgoing(NodeIndex v) const { return outgoing_[v]; }
  NodeIndex tail(EdgeIndex e) const { return tail_[e]; }
  NodeIndex head(EdgeIndex e) const { return head_[e]; }

  double max_length() const;
  double min_cell_width() const;
  /// Largest finite capacity among junctions that are neither sources nor
  /// sinks; 0 when there is none.
  double interior_capacity() const;

 private:
  RoadNetwork() = default;

  std::vector<JunctionSpec> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, NodeIndex> node_lookup_;
  std::unordered_map<std::string, EdgeIndex> edge_lookup_;
  std::vector<std::vector<EdgeIndex>> incoming_;
  std::vector<std::vector<EdgeIndex>> outgoing_;
  std::vector<NodeIndex> tail_;
  std::vector<NodeIndex> head_;
};

}  // namespace bufferlane
