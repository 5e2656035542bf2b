#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bufferlane/journey.hpp"
#include "bufferlane/junction.hpp"
#include "bufferlane/network.hpp"
#include "bufferlane/router.hpp"
#include "bufferlane/solver.hpp"
#include "bufferlane/tracker.hpp"

namespace bufferlane {

struct EdgeDecl {
  std::string id;
  std::string from;
  std::string to;
  double length = 1.0;
  std::optional<int> cells;  // derived from the run's h when absent
  bool operator==(const EdgeDecl&) const = default;
};

struct DensityDecl {
  std::string edge;
  std::vector<DensityPiece> pieces;
  bool operator==(const DensityDecl&) const = default;
};

struct BufferDecl {
  std::string node;
  double load = 0.0;
  bool operator==(const BufferDecl&) const = default;
};

struct RunSection {
  double horizon = 1.0;
  double h = 0.1;
  DemandMode demand_mode = DemandMode::Standard;
  std::size_t log_stride = 1;
  bool operator==(const RunSection&) const = default;
};

enum class OracleKind { None, LinearNetwork, Rarefaction };

struct CarSection {
  std::string start_edge;
  double x = 0.0;
  double t = 0.0;
  std::string destination;
  TrackerKind tracker = TrackerKind::Complex;
  PolicyKind policy = PolicyKind::Shortest;
  double w_rho = 0.5;
  double w_r = 0.5;
  OracleKind oracle = OracleKind::None;
  bool operator==(const CarSection&) const = default;
};

struct ScenarioDoc {
  std::vector<JunctionSpec> nodes;
  std::vector<EdgeDecl> edges;
  std::vector<DensityDecl> densities;
  std::vector<BufferDecl> buffers;
  RunSection run;
  std::optional<CarSection> car;
  bool operator==(const ScenarioDoc&) const = default;
};

/// Parses and validates a scenario. Syntax problems raise SyntaxError with a
/// "line:column:" prefix, invariant violations raise SemanticError.
ScenarioDoc parse_scenario(std::string_view text);
ScenarioDoc load_scenario(const std::string& path);

/// Canonical text form; parse_scenario(serialize_scenario(d)) == d.
std::string serialize_scenario(const ScenarioDoc& doc);

RoadNetwork build_network(const ScenarioDoc& doc);
SimState build_initial_state(const ScenarioDoc& doc, const RoadNetwork& network);
/// CFL step fitted to the horizon.
TimeGrid build_time_grid(const ScenarioDoc& doc, const RoadNetwork& network);
CarStart build_car_start(const ScenarioDoc& doc, const RoadNetwork& network);

std::string_view to_string(TrackerKind kind);
TrackerKind parse_tracker(std::string_view text);
std::string_view to_string(DemandMode mode);
DemandMode parse_demand_mode(std::string_view text);
std::string_view to_string(OracleKind kind);

/// Shortest round-trippable decimal form.
std::string format_number(double value);

// Result files. Every CSV has a header row and one record per line.
std::string density_csv(const SimLog& log, std::size_t stride);
std::string buffer_csv(const SimLog& log, std::size_t stride);
std::string trajectory_csv(const SimLog& log, const CarLog& car);
std::string route_csv(const SimLog& log, const CarLog& car);

}  // namespace bufferlane
